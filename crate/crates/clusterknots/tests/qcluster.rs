mod common;

use clusterknots::cluster::{mutate_x, ClassicalSeed};
use clusterknots::quiver::{d_quiver, disk_quiver, e_quiver, z_quiver, Seed};
use clusterknots::qcluster::*;
use clusterknots::scalar::{EpsPoly, GaussRat, MultiRat, RatFuncT};
use clusterknots::weyl::{NOElem, WMono};
use common::rf;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn z_gens() -> (std::sync::Arc<Form>, Vec<TorusElem>) {
    let form = Form::new(z_quiver().eps2_matrix().to_vec());
    let g = (0..7).map(|i| TorusElem::gen(&form, i)).collect();
    (form, g)
}

fn plus_q(form: &std::sync::Arc<Form>, e: &TorusElem) -> TorusElem {
    &TorusElem::one(form) + &e.scale(&q_pow(1))
}

#[test]
fn generators_q_commute() {
    let form = Form::new(d_quiver().eps2_matrix().to_vec());
    let x1 = TorusElem::gen(&form, 0);
    let x2 = TorusElem::gen(&form, 1);
    assert_eq!(&x1 * &x2, (&x2 * &x1).scale(&q_pow(-2)));
    let b = plus_q(&form, &x1);
    assert_eq!(&b.inv().unwrap() * &b, TorusElem::one(&form));
    assert_eq!(&b * &b.inv().unwrap(), TorusElem::one(&form));
}

#[test]
fn torus_products_are_associative() {
    let (form, g) = z_gens();
    let mut rng = StdRng::seed_from_u64(3);
    let rand_mono = |rng: &mut StdRng| {
        let a: Vec<i64> = (0..7).map(|_| rng.gen_range(-2..=2)).collect();
        TorusElem::from_poly(TPoly::mono(&form, a, q_half(rng.gen_range(-3..=3))))
    };
    for _ in 0..50 {
        let (a, b, c) = (rand_mono(&mut rng), rand_mono(&mut rng), rand_mono(&mut rng));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
    assert_eq!(g.len(), 7);
}

#[test]
fn composite_images_of_x1_and_x7() {
    let (form, g) = z_gens();
    let (i1, i7) = composite_images().unwrap();
    let want1 = &g[0] * &plus_q(&form, &(&g[1] * &plus_q(&form, &g[3])));
    assert_eq!(i1, want1, "X1 image: {i1}");
    // X₇ picks up its factor on the right, like every mutation image; this is
    // the form whose Schrödinger image is ix₂⁻¹(1 − q^{−2x₂p₂}(1 − T⁻¹q x₁⁻¹x₂)).
    let want7 = &g[6] * &plus_q(&form, &(&g[5] * &plus_q(&form, &g[3])));
    assert_eq!(i7, want7, "X7 image: {i7}");
    // the left-multiplied arrangement is a different element: X₆X₇ ≠ X₇X₆
    let left7 = &plus_q(&form, &(&plus_q(&form, &g[3]) * &g[5])) * &g[6];
    assert_ne!(i7, left7);
}

#[test]
fn both_mutation_orders_agree() {
    let z = QSeed::initial(z_quiver());
    let a = z.apply_steps(&z_composite()).unwrap();
    let b = z.r_operator(1, 1).unwrap();
    assert_eq!(a.quiver(), b.quiver());
    assert_eq!(a.vars()[0], b.vars()[0]);
    assert_eq!(a.vars()[6], b.vars()[6]);
    assert_eq!(a.quiver(), z.quiver());
}

#[test]
fn classical_limit_of_quantum_mutation() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..20 {
        let n = rng.gen_range(3..=5);
        let mut arrows = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                match rng.gen_range(0..5) {
                    0 => arrows.push((a, b)),
                    1 => arrows.push((b, a)),
                    2 => {
                        arrows.push((a, b));
                        arrows.push((a, b));
                    }
                    _ => {}
                }
            }
        }
        let q = Seed::from_arrows(n, &[], &arrows).unwrap();
        let k = rng.gen_range(0..n);
        let qs = QSeed::initial(q.clone()).mutate(k).unwrap();
        let xs: Vec<MultiRat> = (1..=n).map(MultiRat::var).collect();
        let classical = mutate_x(&q, &xs, k).unwrap();
        for i in 0..n {
            assert_eq!(qs.vars()[i].classical().unwrap(), classical[i]);
        }
        assert_eq!(qs.quiver(), &q.mutate(k).unwrap());
    }
}

#[test]
fn classical_limit_of_the_r_operator() {
    let q = disk_quiver(2).unwrap();
    let quantum = QSeed::initial(q.clone()).r_operator(1, 1).unwrap();
    let classical = ClassicalSeed::generic(q, false).r_operator(1, 1).unwrap();
    for i in 0..7 {
        assert_eq!(quantum.vars()[i].classical().unwrap(), classical.xvars()[i], "slot {}", i + 1);
    }
}

#[test]
fn mutated_variables_q_commute() {
    let s = QSeed::initial(z_quiver()).mutate(3).unwrap();
    let (x2, x3) = (&s.vars()[1], &s.vars()[2]);
    // ε′₂₃ after μ₄ is −1 (the new arrow 2 → 3 beside the old 3 → 1 ... )
    let e = s.quiver().eps2(1, 2);
    let lhs = x2 * x3;
    let rhs = (x3 * x2).scale(&q_half(-2 * e));
    assert_eq!(lhs.classical().unwrap(), rhs.classical().unwrap());
    assert!(s.quiver().is_frozen(0));
}

#[test]
fn frozen_vertices_do_not_mutate() {
    assert!(QSeed::initial(z_quiver()).mutate(0).is_err());
}

#[test]
fn amalgamation_embedding() {
    let am = Amalgamation::new(&d_quiver(), &e_quiver(), &[("4'", "5'")], &["4'"]).unwrap();
    let form = Form::new(am.glued().eps2_matrix().to_vec());
    let g = |i| TorusElem::gen(&form, i);
    let tf = am.target().clone();
    let t = |i| TorusElem::gen(&tf, i);
    // X₄ ↦ X₄′ ⊗ X₅′, frozen X₁ ↦ X₁′ ⊗ 1
    assert_eq!(am.embed(&g(3)).unwrap(), &t(3) * &t(4));
    assert_eq!(am.embed(&g(0)).unwrap(), t(0));
    assert_eq!(am.embed(&g(6)).unwrap(), t(7));
    for i in 0..7 {
        for j in 0..7 {
            let lhs = am.embed(&(&g(i) * &g(j))).unwrap();
            let rhs = &am.embed(&g(i)).unwrap() * &am.embed(&g(j)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn quantum_group_relations() {
    let s = sl2_embed(&d_quiver()).unwrap();
    let q = q_pow(1);
    let q2 = q_pow(2);
    assert_eq!(&s.k * &s.e, (&s.e * &s.k).scale(&q2));
    assert_eq!(&s.k * &s.f, (&s.f * &s.k).scale(&q_pow(-2)));
    assert_eq!(&s.kp * &s.e, (&s.e * &s.kp).scale(&q_pow(-2)));
    assert_eq!(&s.kp * &s.f, (&s.f * &s.kp).scale(&q2));
    assert_eq!(&s.kp * &s.k, &s.k * &s.kp);
    let comm = &(&s.e * &s.f) - &(&s.f * &s.e);
    let want = (&s.k - &s.kp).scale(&(&q - &q_pow(-1)));
    assert_eq!(comm, want);
}

#[test]
fn representation_of_the_x1_image() {
    let ctx = RepContext::z_torus(1).unwrap();
    let (i1, _) = composite_images().unwrap();
    let got = rep_eval_noelem(&i1, &ctx).unwrap();
    let it = RatFuncT::i().checked_div(&RatFuncT::t()).unwrap();
    let e = |m: WMono, c0: RatFuncT, c1: RatFuncT| (m, EpsPoly::from_coeffs(vec![&it * &c0, &it * &c1], 1));
    let x1x2p1 = WMono::from_entries([(1, 1, 1), (2, 1, 0)]);
    let want = NOElem::from_terms(
        [
            e(WMono::x(1), rf(0, &[1, 0, -1]), rf(0, &[0, 0, -2])),
            e(WMono::x(2), rf(1, &[1]), rf(1, &[1])),
            e(WMono::xp(1, 2, 1), RatFuncT::zero(), rf(2, &[-2])),
            e(x1x2p1, RatFuncT::zero(), rf(1, &[2])),
        ],
        1,
    );
    assert_eq!(got, want, "\n{}", got.dump());
}

#[test]
fn representation_is_an_algebra_map() {
    let ctx = RepContext::z_torus(2).unwrap();
    let (form, _) = z_gens();
    let mut rng = StdRng::seed_from_u64(8);
    let rand_poly = |rng: &mut StdRng| {
        let mut p = TPoly::zero(&form);
        for _ in 0..2 {
            let a: Vec<i64> = (0..7).map(|_| if rng.gen_bool(0.3) { rng.gen_range(-1..=1) } else { 0 }).collect();
            p = &p + &TPoly::mono(&form, a, q_half(rng.gen_range(-2..=2)));
        }
        TorusElem::from_poly(p)
    };
    for _ in 0..10 {
        let a = rand_poly(&mut rng);
        let b = rand_poly(&mut rng);
        let lhs = rep_eval_noelem(&(&a * &b), &ctx).unwrap();
        let rhs = rep_eval_noelem(&a, &ctx).unwrap().star(&rep_eval_noelem(&b, &ctx).unwrap());
        assert_eq!(lhs, rhs);
    }
    assert!(rep_eval_noelem(&TorusElem::one(&form), &ctx).unwrap().is_one());
    let x2 = rep_eval_noelem(&TorusElem::gen(&form, 1), &ctx).unwrap();
    assert_eq!(x2.eps_coeff(0), NOElem::constant(rf(2, &[-1]), 2));
}

#[test]
fn localised_elements_are_rejected() {
    let ctx = RepContext::z_torus(1).unwrap();
    let s = QSeed::initial(z_quiver()).mutate(3).unwrap();
    assert!(s.vars()[2].inverse_count() > 0);
    assert!(rep_eval_noelem(&s.vars()[2], &ctx).is_err());
}

/// `f` at `ε⁰`. Integrating `∂_{p₁}f` fixes the sign of the `x₂²p₁²` term
/// to `+(1 − T⁻²)`.
fn derived_f() -> NOElem {
    let t = RatFuncT::t();
    let ti = RatFuncT::t_pow(-1);
    let one = RatFuncT::one();
    let m = |e: &[(u32, i32, u32)]| WMono::from_entries(e.iter().copied());
    let terms = vec![
        (m(&[(1, 1, 1)]), one.clone()),
        (m(&[(2, 1, 1)]), one.clone()),
        (m(&[(1, 0, 1), (2, 1, 0)]), -&(&ti + &t)),
        (m(&[(1, 1, 1), (2, 1, 1)]), RatFuncT::from_int(2)),
        (m(&[(1, 1, 2), (2, 1, 0)]), &ti - &t),
        (m(&[(1, 0, 2), (2, 2, 0)]), &one - &RatFuncT::t_pow(-2)),
        (m(&[(1, 0, 1), (2, 2, 1)]), ti.scale(&GaussRat::from_int(-2))),
    ];
    NOElem::from_terms(terms.into_iter().map(|(m, c)| (m, EpsPoly::constant(c, 1))), 1)
}

#[test]
fn perturbed_r_first_order() {
    let pr = derive_perturbed_r(1).unwrap();
    assert_eq!(pr.lambda, r0_matrix());
    assert_eq!(pr.r.lambda(), &r0_matrix());
    let f0 = pr.f.eps_coeff(0);
    assert_eq!(f0, derived_f(), "\n{}", f0.dump());
}

#[test]
fn first_order_conjugates() {
    let pr = derive_perturbed_r(1).unwrap();
    let t = RatFuncT::t();
    let ti = RatFuncT::t_pow(-1);
    let m = |e: &[(u32, i32, u32)]| WMono::from_entries(e.iter().copied());
    let lin = |terms: Vec<(WMono, RatFuncT)>| {
        NOElem::from_terms(terms.into_iter().map(|(m, c)| (m, EpsPoly::from_coeffs(vec![RatFuncT::zero(), c], 1))), 1)
    };
    // R₀⁻¹ R x₁ R⁻¹ R₀ − x₁ and R₀⁻¹ R x₂ R⁻¹ R₀ − x₂ at ε¹
    let y1 = lin(vec![
        (m(&[(1, 1, 0)]), RatFuncT::one()),
        (m(&[(2, 1, 0)]), -&(&ti + &t)),
        (m(&[(1, 1, 0), (2, 1, 1)]), RatFuncT::from_int(2)),
        (m(&[(1, 1, 1), (2, 1, 0)]), (&ti - &t).scale(&GaussRat::from_int(2))),
        (m(&[(1, 0, 1), (2, 2, 0)]), (&RatFuncT::one() - &RatFuncT::t_pow(-2)).scale(&GaussRat::from_int(2))),
        (m(&[(2, 2, 1)]), ti.scale(&GaussRat::from_int(-2))),
    ]);
    let y2 = lin(vec![
        (m(&[(2, 1, 0)]), RatFuncT::one()),
        (m(&[(1, 1, 1), (2, 1, 0)]), RatFuncT::from_int(2)),
        (m(&[(1, 0, 1), (2, 2, 0)]), ti.scale(&GaussRat::from_int(-2))),
    ]);
    assert_eq!(&pr.conjugates[0] - &NOElem::x(1, 1), y1, "\n{}", pr.conjugates[0].dump());
    assert_eq!(&pr.conjugates[1] - &NOElem::x(2, 1), y2, "\n{}", pr.conjugates[1].dump());
}

#[test]
fn perturbed_r_second_order_is_consistent() {
    let pr = derive_perturbed_r(2).unwrap();
    assert_eq!(pr.f.eps_coeff(0).truncate(1), derive_perturbed_r(1).unwrap().f.eps_coeff(0));
}
