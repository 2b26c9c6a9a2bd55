use clusterknots::error::Error;
use clusterknots::quiver::*;
use proptest::prelude::*;

/// Random seed on `n` vertices, vertex 1 frozen; half-integer entries only
/// where both ends would be frozen, so all entries here are even.
fn seed() -> impl Strategy<Value = Seed> {
    (3usize..=6).prop_flat_map(|n| {
        prop::collection::vec(-2i64..=2, n * (n - 1) / 2).prop_map(move |upper| {
            let mut eps2 = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let e = 2 * it.next().expect("sized");
                    eps2[i][j] = e;
                    eps2[j][i] = -e;
                }
            }
            Seed::new((1..=n).map(|i| format!("v{i}")).collect(), &["v1"], eps2).expect("valid")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mutation_is_an_involution(s in seed(), k in 1usize..6) {
        let k = 1 + k % (s.len() - 1);
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }

    #[test]
    fn mutation_keeps_a_valid_seed(s in seed(), ks in prop::collection::vec(1usize..6, 0..6)) {
        let mut q = s;
        for k in ks {
            q = q.mutate(1 + k % (q.len() - 1)).unwrap();
            let rebuilt = Seed::new(q.vertices().to_vec(), &["v1"], q.eps2_matrix().to_vec());
            prop_assert_eq!(rebuilt.unwrap(), q.clone());
        }
    }

    #[test]
    fn unconnected_mutations_commute(s in seed(), a in 1usize..6, b in 1usize..6) {
        let (a, b) = (1 + a % (s.len() - 1), 1 + b % (s.len() - 1));
        prop_assume!(s.eps2(a, b) == 0);
        prop_assert_eq!(s.mutate(a).unwrap().mutate(b).unwrap(), s.mutate(b).unwrap().mutate(a).unwrap());
    }

    #[test]
    fn swaps_conjugate_mutation(s in seed(), a in 1usize..6, b in 1usize..6) {
        let (a, b) = (1 + a % (s.len() - 1), 1 + b % (s.len() - 1));
        let t = s.swap(a, b).unwrap();
        prop_assert_eq!(t.mutate(a).unwrap(), s.mutate(b).unwrap().swap(a, b).unwrap());
    }

    #[test]
    fn json_round_trip(s in seed()) {
        prop_assert_eq!(Seed::from_json(&s.to_json()).unwrap(), s);
    }
}

#[test]
fn frozen_vertices_do_not_mutate() {
    let q = disk_quiver(2).unwrap();
    assert!(matches!(q.mutate(0), Err(Error::FrozenVertex(_))));
    assert!(matches!(q.mutate(6), Err(Error::FrozenVertex(_))));
    assert!(matches!(q.mutate_label("9"), Err(Error::UnknownVertex(_))));
    assert!(matches!(q.swap(0, 7), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn invalid_seeds_are_rejected() {
    let v = |n: usize| (1..=n).map(|i| i.to_string()).collect::<Vec<_>>();
    assert!(Seed::new(v(2), &[], vec![vec![0, 2], vec![2, 0]]).is_err());
    assert!(Seed::new(v(2), &["1"], vec![vec![0, 1], vec![-1, 0]]).is_err());
    assert!(Seed::new(v(2), &["1", "2"], vec![vec![0, 1], vec![-1, 0]]).is_ok());
    assert!(Seed::new(vec!["a".into(), "a".into()], &[], vec![vec![0; 2]; 2]).is_err());
    assert!(disk_quiver(0).is_err());
}

#[test]
fn disk_quivers() {
    for n in 1..=4 {
        let q = disk_quiver(n).unwrap();
        assert_eq!(q.len(), 3 * n + 1);
        assert_eq!(q.frozen().collect::<Vec<_>>(), vec![0, 3 * n]);
        // every mutable vertex has two incoming and two outgoing arrows, or
        // one of each at the ends of the chain
        for i in 1..3 * n {
            let out: i64 = (0..q.len()).map(|j| q.eps2(i, j).max(0)).sum();
            let inc: i64 = (0..q.len()).map(|j| (-q.eps2(i, j)).max(0)).sum();
            assert_eq!(out, inc, "vertex {}", i + 1);
        }
    }
}

#[test]
fn amalgamation() {
    let z = amalgamate(&d_quiver(), &e_quiver(), &[("4'", "5'")], &["4'"]).unwrap();
    assert_eq!(z.len(), 7);
    assert!(!z.is_frozen(z.index_of("4'").unwrap()));
    assert!(z.is_frozen(z.index_of("1'").unwrap()));
    assert!(z.is_frozen(z.index_of("8'").unwrap()));
    assert_eq!(z_quiver().eps2_matrix(), disk_quiver(2).unwrap().eps2_matrix());
    // gluing a mutable vertex, or the same vertex twice, is refused
    assert!(matches!(
        amalgamate(&d_quiver(), &e_quiver(), &[("2'", "5'")], &[]),
        Err(Error::InvalidAmalgamation(_))
    ));
    assert!(matches!(
        amalgamate(&d_quiver(), &e_quiver(), &[("4'", "5'"), ("4'", "8'")], &[]),
        Err(Error::InvalidAmalgamation(_))
    ));
    // a shared label outside the gluing is refused
    assert!(amalgamate(&d_quiver(), &d_quiver(), &[("4'", "1'")], &[]).is_err());
}

#[test]
fn ensemble_exponents_need_integrality() {
    let q = Seed::new(vec!["a".into(), "b".into()], &["a", "b"], vec![vec![0, 1], vec![-1, 0]]).unwrap();
    assert!(q.ensemble_exponents(&[vec![0, 0], vec![0, 0]]).is_err());
    assert_eq!(q.ensemble_exponents(&[vec![0, 1], vec![-1, 0]]).unwrap(), vec![vec![0, 1], vec![-1, 0]]);
}
