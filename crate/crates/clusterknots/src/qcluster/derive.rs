//! Derivation of the perturbed R-matrix `R = R₀(1 + εN(f))` from the
//! quantum mutation composite.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::z_quiver;
use crate::scalar::{EpsPoly, GaussRat, RatFuncT};
use crate::weyl::{conj_by_gauss, NOElem, PGauss, Side};

use super::mutation::{z_composite, QSeed};
use super::rep::{rep_eval_noelem, RepContext};
use super::torus::TorusElem;

/// `((T, 0), (1−T², T))`.
pub fn r0_matrix() -> Matrix {
    let t = RatFuncT::t();
    Matrix::from_rows(vec![vec![t.clone(), RatFuncT::zero()], vec![&RatFuncT::one() - &(&t * &t), t]])
}

/// The images of `X₁` and `X₇` under the Z-quiver composite.
pub fn composite_images() -> Result<(TorusElem, TorusElem)> {
    let s = QSeed::initial(z_quiver()).apply_steps(&z_composite())?;
    Ok((s.vars()[0].clone(), s.vars()[6].clone()))
}

/// Everything the derivation produces.
#[derive(Clone, Debug)]
pub struct PerturbedR {
    /// `R = R₀(1 + εN(f))`, exact modulo `ε^{d+1}`.
    pub r: PGauss,
    /// `f`, known modulo `ε^d`.
    pub f: NOElem,
    pub lambda: Matrix,
    /// `R₀⁻¹ (R x_j R⁻¹) R₀` for `j = 1, 2`.
    pub conjugates: [NOElem; 2],
}

fn swap_legs(e: &NOElem) -> NOElem {
    e.rename(&|l| match l {
        1 => 2,
        2 => 1,
        l => l,
    })
}

/// Runs the pipeline at truncation order `d ≥ 1`.
pub fn derive_perturbed_r(d: usize) -> Result<PerturbedR> {
    if d == 0 {
        return Err(Error::OrderMismatch);
    }
    let (img1, img7) = composite_images()?;
    let ctx = RepContext::z_torus(d)?;
    let r0 = r0_matrix();
    let legs = [1, 2];

    // P(R X₁ R⁻¹) = img₁ with X₁ = iT⁻¹x₁; P(R X₇ R⁻¹) = img₇ with X₇ = ix₂⁻¹.
    let i = GaussRat::i();
    let it = RatFuncT::i().checked_div(&RatFuncT::t())?;
    let rx1 = swap_legs(&rep_eval_noelem(&img1, &ctx)?).scale_rf(&it.inv()?);
    let rx2inv = swap_legs(&rep_eval_noelem(&img7, &ctx)?).scale_const(&i.inv()?);
    let rx2 = rx2inv.invert_unit()?;

    let mut conjugates = Vec::with_capacity(2);
    let mut ds = Vec::with_capacity(2);
    for (j, t) in [rx1, rx2].into_iter().enumerate() {
        let y = conj_by_gauss(&legs, &r0, &t, Side::Right)?;
        let xj = NOElem::x(legs[j], d);
        let dj = (&y - &xj).unshift_eps(1).map_err(|_| {
            Error::Unrepresentable(format!("R₀⁻¹ R x{} R⁻¹ R₀ does not reduce to x{} at ε⁰", j + 1, j + 1))
        })?;
        conjugates.push(y);
        ds.push(dj);
    }

    // N(∂_{p_j} f) = D_j ⋆ (1 + εN(f)), solved order by order.
    let mut f = NOElem::zero(d);
    for k in 0..d {
        let u = &NOElem::one(d) + &f.shift_eps(1);
        let g1 = ds[0].star(&u).eps_coeff(k);
        let g2 = ds[1].star(&u).eps_coeff(k);
        let fk = integrate_pair(&g1, &g2)?;
        f = &f + &fk.shift_eps(k);
    }
    let pert = &NOElem::one(d) + &f.shift_eps(1);
    let r = PGauss::new(legs.to_vec(), EpsPoly::one(d), r0.clone(), &pert)?;
    let [c1, c2]: [NOElem; 2] = conjugates.try_into().expect("two legs");
    Ok(PerturbedR { r, f, lambda: r0, conjugates: [c1, c2] })
}

/// Finds `h` with `∂_{p₁}h = g₁`, `∂_{p₂}h = g₂` and no `p`-free part.
pub fn integrate_pair(g1: &NOElem, g2: &NOElem) -> Result<NOElem> {
    let h1 = g1.integrate_p(1);
    let rest = g2 - &h1.d_p(2);
    if !rest.d_p(1).is_zero() {
        return Err(Error::InconsistentPartials);
    }
    let h = &h1 + &rest.integrate_p(2);
    if !(&h.d_p(1) - g1).is_zero() || !(&h.d_p(2) - g2).is_zero() {
        return Err(Error::InconsistentPartials);
    }
    Ok(h)
}
