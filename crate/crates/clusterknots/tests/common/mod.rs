//! Shared oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use clusterknots::matrix::Matrix;
use clusterknots::scalar::{EpsPoly, GaussRat, LaurentT, RatFuncT};
use clusterknots::weyl::{star_mono, Leg, NOElem, PGauss, WMono};
use rand::rngs::StdRng;
use rand::Rng;

/// Coefficient table: monomial → ε-order → Taylor coefficients at T = 0.
pub type Series = BTreeMap<WMono, Vec<Vec<GaussRat>>>;

pub fn series_of(e: &NOElem, n: i64) -> Series {
    let mut out = Series::new();
    for (m, c) in e.terms() {
        let rows: Vec<Vec<GaussRat>> = c.coeffs().iter().map(|r| r.series_at_zero(n).unwrap()).collect();
        if rows.iter().any(|r| r.iter().any(|x| !num_traits::Zero::is_zero(x))) {
            out.insert(m.clone(), rows);
        }
    }
    out
}

/// Drops `T^k`, `k > n`, from polynomial coefficients; anything with a
/// genuine denominator is left alone.
pub fn cut(e: &NOElem, n: i64) -> NOElem {
    e.map_coeffs(|c| {
        c.map(|r| match r.as_laurent() {
            Some(l) if l.low() >= 0 => RatFuncT::from_laurent(LaurentT::from_terms(
                l.terms().filter(|&(k, _)| k <= n).map(|(k, v)| (k, v.clone())),
            )),
            _ => r.clone(),
        })
    })
}

/// `ω·N(exp(xᵀ(Λ−1)p)·S)` with the exponential cut at degree `n`; exact
/// modulo `T^{n+1}` whenever `Λ − 1 = O(T)`.
pub fn expand(g: &PGauss, n: u32) -> NOElem {
    let d = g.order();
    let legs = g.legs();
    let mut q = NOElem::zero(d);
    for (r, &a) in legs.iter().enumerate() {
        for (c, &b) in legs.iter().enumerate() {
            let mut v = g.lambda().get(r, c).clone();
            if r == c {
                v = &v - &RatFuncT::one();
            }
            if !v.is_zero() {
                q.add_term(WMono::from_entries([(a, 1, 0), (b, 0, 1)]), &EpsPoly::constant(v, d));
            }
        }
    }
    let mut exp = NOElem::zero(d);
    let mut pw = NOElem::one(d);
    let mut fact = GaussRat::from_int(1);
    for k in 0..=n {
        if k > 0 {
            pw = cut(&pw.sym_mul(&q), n as i64);
            fact = &fact * &GaussRat::from_int(k as i64);
        }
        exp = &exp + &pw.scale_const(&fact.inv().unwrap());
    }
    cut(&exp.sym_mul(g.symbol()).scale(g.omega()), n as i64)
}

/// `m_{i,j→k}` applied termwise to an explicit normal-ordered sum.
pub fn contract_oracle(e: &NOElem, i: Leg, j: Leg, k: Leg) -> NOElem {
    let d = e.order();
    let mut out = NOElem::zero(d);
    for (m, c) in e.terms() {
        let (ai, bi) = m.get(i);
        let (aj, bj) = m.get(j);
        let rest = m.with(i, 0, 0).with(j, 0, 0);
        for (mm, r) in star_mono(&WMono::xp(k, ai, bi), &WMono::xp(k, aj, bj)) {
            out.add_term(mm.mul_comm(&rest), &c.scale_const(&r));
        }
    }
    out
}

pub fn t() -> RatFuncT {
    RatFuncT::t()
}

pub fn rf(low: i64, cs: &[i64]) -> RatFuncT {
    RatFuncT::from_laurent(LaurentT::from_ints(low, cs))
}

/// A random `n×n` coupling `1 + T·A₀` with small integer `A₀`.
pub fn random_tadic(rng: &mut StdRng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |r, c| {
        let a = rng.gen_range(-2..=2);
        let b = rng.gen_range(-1..=1);
        let v = rf(1, &[a, b]);
        if r == c {
            &RatFuncT::one() + &v
        } else {
            v
        }
    })
}

/// A random polynomial perturbation on `legs` of degree ≤ `deg` with `O(T⁰)`
/// coefficients.
pub fn random_poly(rng: &mut StdRng, legs: &[Leg], deg: u32, d: usize, terms: usize) -> NOElem {
    let mut e = NOElem::one(d);
    for _ in 0..terms {
        let mut m = WMono::one();
        let mut budget = rng.gen_range(1..=deg);
        while budget > 0 {
            let l = legs[rng.gen_range(0..legs.len())];
            let (a, b) = m.get(l);
            if rng.gen_bool(0.5) {
                m = m.with(l, a + 1, b);
            } else {
                m = m.with(l, a, b + 1);
            }
            budget -= 1;
        }
        let c = rf(0, &[rng.gen_range(-3..=3), rng.gen_range(-1..=1)]);
        let k = rng.gen_range(0..=d);
        let mut cs = vec![RatFuncT::zero(); d + 1];
        cs[k] = c;
        e.add_term(m, &EpsPoly::from_coeffs(cs, d));
    }
    e
}
