use clusterknots::cluster::*;
use clusterknots::quiver::{disk_quiver, Seed};
use clusterknots::scalar::MultiRat;
use proptest::prelude::*;

fn v(i: usize) -> MultiRat {
    MultiRat::var(i)
}

/// The cluster ensemble map `X_i = ∏_j A_j^{ε_ji}`.
fn ensemble(q: &Seed, a: &[MultiRat]) -> Vec<MultiRat> {
    (0..q.len())
        .map(|i| (0..q.len()).fold(MultiRat::one(), |acc, j| &acc * &a[j].pow(q.eps_int(j, i)).unwrap()))
        .collect()
}

#[test]
fn ensemble_map_intertwines_mutations() {
    // oracle: A-mutation followed by the ensemble map is X-mutation of the
    // image, at every mutable vertex of a disk seed
    let q = disk_quiver(2).unwrap();
    let a: Vec<MultiRat> = (1..=7).map(v).collect();
    for k in 1..6 {
        let lhs = ensemble(&q.mutate(k).unwrap(), &mutate_a(&q, &a, k).unwrap());
        let rhs = mutate_x(&q, &ensemble(&q, &a), k).unwrap();
        for i in 0..7 {
            // frozen X-variables see incomplete neighbourhoods; compare mutable ones
            if !q.is_frozen(i) {
                assert_eq!(lhs[i], rhs[i], "μ{} slot {}", k + 1, i + 1);
            }
        }
    }
}

#[test]
fn r_operator_on_x_variables() {
    // hand-derived: Ř₁ fixes the quiver and sends X₁ ↦ X₁(1 + X₂ + X₂X₄)
    let s = ClassicalSeed::generic(disk_quiver(2).unwrap(), true);
    let r = s.r_operator(1, 1).unwrap();
    assert_eq!(r.quiver(), s.quiver());
    let one = MultiRat::one();
    assert_eq!(r.xvars()[0], &v(1) * &(&(&one + &v(2)) + &(&v(2) * &v(4))));
    assert_eq!(r.xvars()[6], &(&(&one + &v(6)) + &(&v(4) * &v(6))) * &v(7));
    // the products of all X-variables are conserved by any mutation
    let prod = |xs: &[MultiRat]| xs.iter().fold(MultiRat::one(), |a, b| &a * b);
    assert_eq!(prod(r.xvars()), prod(s.xvars()));
}

#[test]
fn braid_relations() {
    for n in [3, 4] {
        let g = ClassicalSeed::generic(disk_quiver(n).unwrap(), true);
        for i in 1..n - 1 {
            let l = g.r_operator(i, 1).unwrap().r_operator(i + 1, 1).unwrap().r_operator(i, 1).unwrap();
            let r = g.r_operator(i + 1, 1).unwrap().r_operator(i, 1).unwrap().r_operator(i + 1, 1).unwrap();
            assert_eq!(l, r, "n = {n}, i = {i}");
        }
        for i in 1..n {
            assert_eq!(g.r_operator(i, 1).unwrap().r_operator(i, -1).unwrap(), g);
            assert_eq!(g.r_operator(i, -1).unwrap().r_operator(i, 1).unwrap(), g);
        }
    }
    let g = ClassicalSeed::generic(disk_quiver(4).unwrap(), true);
    let a = g.r_operator(1, 1).unwrap().r_operator(3, -1).unwrap();
    assert_eq!(a, g.r_operator(3, -1).unwrap().r_operator(1, 1).unwrap());
}

#[test]
fn step_notation() {
    assert_eq!(parse_steps("s35 s25 s36 m4 m2 m6 m4").unwrap(), r_steps(1));
    assert_eq!(parse_steps("s3,12 m10").unwrap(), vec![Step::Mutate(10), Step::Swap(3, 12)]);
    for bad in ["m0", "x4", "s3", "s123", "m"] {
        assert!(parse_steps(bad).is_err(), "{bad}");
    }
    let g = ClassicalSeed::generic(disk_quiver(2).unwrap(), false);
    assert_eq!(g.apply_steps(&r_steps(1)).unwrap(), g.r_operator(1, 1).unwrap());
}

#[test]
fn seeds_validate_their_variables() {
    let q = disk_quiver(1).unwrap();
    assert!(ClassicalSeed::new(q.clone(), vec![v(1); 3]).is_err());
    assert!(ClassicalSeed::new(q.clone(), vec![v(1), MultiRat::zero(), v(2), v(3)]).is_err());
    let s = ClassicalSeed::new(q, (1..=4).map(v).collect()).unwrap();
    assert!(s.mutate(0).is_err());
    assert!(s.clone().with_avars(vec![v(1)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mutation_sequences_reverse(ks in prop::collection::vec(1usize..9, 1..5)) {
        let g = ClassicalSeed::generic(disk_quiver(3).unwrap(), true);
        let mut s = g.clone();
        for &k in &ks {
            s = s.mutate(k).unwrap();
        }
        for &k in ks.iter().rev() {
            s = s.mutate(k).unwrap();
        }
        prop_assert_eq!(s, g);
    }

    #[test]
    fn pattern_stages_follow_the_word(
        w in prop::collection::vec((1usize..3, prop::bool::ANY), 0..6),
        x in prop::collection::vec(1i64..6, 10),
    ) {
        // positive numeric seeds keep every mutation defined and cheap
        let letters: Vec<(usize, i8)> = w.iter().map(|&(k, s)| (k, if s { 1 } else { -1 })).collect();
        let word = clusterknots::braid::BraidWord::new(3, letters.clone()).unwrap();
        let g = ClassicalSeed::new(disk_quiver(3).unwrap(), x.into_iter().map(MultiRat::from_int).collect()).unwrap();
        let pat = cluster_pattern(&word, &g).unwrap();
        prop_assert_eq!(pat.stages.len(), letters.len() + 1);
        let mut s = g;
        for (i, &(k, e)) in letters.iter().enumerate() {
            s = s.r_operator(k, e).unwrap();
            prop_assert_eq!(&pat.stages[i + 1], &s);
        }
    }
}
