//! The perturbative representation: torus generators as normal-ordered
//! Weyl-algebra elements, with `q = e^ε` expanded to a fixed order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{EpsPoly, GaussRat, RatFuncT};
use crate::weyl::{Leg, NOElem, PGauss, WMono};

use super::embed::Amalgamation;
use super::torus::{Form, QCoeff, TPoly, TorusElem};

/// Images of the generators `X_i` and of their inverses.
#[derive(Clone, Debug)]
pub struct RepContext {
    form: Arc<Form>,
    legs: Vec<Leg>,
    d: usize,
    images: Vec<NOElem>,
    inverses: Vec<NOElem>,
}

/// `q^k = e^{kε}` truncated.
fn q_series(k: &GaussRat, d: usize) -> EpsPoly {
    EpsPoly::exp_eps(k, d)
}

/// `N(exp(x_l p_l (e^{cε} − 1)))`, the operator `q^{c·x_l∂_l}`.
pub fn dilation(l: Leg, c: i64, d: usize) -> NOElem {
    let mut a = EpsPoly::exp_eps(&GaussRat::from_int(c), d);
    a = &a - &EpsPoly::one(d);
    let mut out = NOElem::zero(d);
    let mut pw = EpsPoly::one(d);
    let mut fact = GaussRat::from_int(1);
    for k in 0..=d as u32 {
        if k > 0 {
            pw = &pw * &a;
            fact = &fact * &GaussRat::from_int(k as i64);
        }
        if pw.is_zero() {
            break;
        }
        out.add_term(WMono::xp(l, k as i32, k), &pw.scale_const(&fact.inv().expect("nonzero")));
    }
    out
}

fn scaled(e: NOElem, c: RatFuncT, qk: i64) -> NOElem {
    let d = e.order();
    e.scale(&q_series(&GaussRat::from_int(qk), d).scale(&c))
}

impl RepContext {
    pub fn new(form: Arc<Form>, legs: Vec<Leg>, images: Vec<NOElem>, inverses: Vec<NOElem>) -> Result<Self> {
        if images.len() != form.rank() || inverses.len() != form.rank() {
            return Err(Error::LegMismatch("one image and one inverse per generator".into()));
        }
        let d = images.iter().chain(&inverses).map(|e| e.order()).min().unwrap_or(0);
        Ok(RepContext { form, legs, d, images, inverses })
    }

    /// The D-torus on one leg:
    /// `X₁ ↦ iT⁻¹x`, `X₂ ↦ −qT²q^{2x∂}`, `X₃ ↦ −q⁻¹q^{−2x∂}`, `X₄ ↦ ix⁻¹`.
    pub fn d_torus(form: &Arc<Form>, leg: Leg, d: usize) -> Result<Self> {
        let t = RatFuncT::t();
        let ti = RatFuncT::t_pow(-1);
        let i = RatFuncT::i();
        let x = |a: i32| NOElem::mono(WMono::xp(leg, a, 0), d);
        let one = RatFuncT::one();
        let minus = |r: &RatFuncT| -r;
        let images = vec![
            x(1).scale_rf(&(&i * &ti)),
            scaled(dilation(leg, 2, d), minus(&(&t * &t)), 1),
            scaled(dilation(leg, -2, d), minus(&one), -1),
            x(-1).scale_rf(&i),
        ];
        let inverses = vec![
            x(-1).scale_rf(&(&minus(&i) * &t)),
            scaled(dilation(leg, -2, d), minus(&RatFuncT::t_pow(-2)), -1),
            scaled(dilation(leg, 2, d), minus(&one), 1),
            x(1).scale_rf(&minus(&i)),
        ];
        Self::new(form.clone(), vec![leg], images, inverses)
    }

    /// Representations side by side on disjoint legs.
    pub fn tensor(&self, o: &RepContext) -> Result<Self> {
        if self.legs.iter().any(|l| o.legs.contains(l)) {
            return Err(Error::LegMismatch("tensor factors share a leg".into()));
        }
        let mut legs = self.legs.clone();
        legs.extend(&o.legs);
        let mut images = self.images.clone();
        images.extend(o.images.iter().cloned());
        let mut inverses = self.inverses.clone();
        inverses.extend(o.inverses.iter().cloned());
        Self::new(self.form.direct_sum(&o.form), legs, images, inverses)
    }

    /// Pulls a representation of `X_{Σ₁} ⊗ X_{Σ₂}` back along the
    /// amalgamation embedding.
    pub fn pullback(am: &Amalgamation, ctx: &RepContext) -> Result<Self> {
        let n = am.glued().len();
        let form = Form::new(am.glued().eps2_matrix().to_vec());
        let mut images = Vec::with_capacity(n);
        let mut inverses = Vec::with_capacity(n);
        for i in 0..n {
            let g = am.image_of_gen(i);
            images.push(rep_eval_noelem(&g, ctx)?);
            inverses.push(rep_eval_noelem(&g.inv()?, ctx)?);
        }
        Self::new(form, ctx.legs.clone(), images, inverses)
    }

    /// The Z-torus on legs 1, 2: two copies of the D-torus glued along
    /// `4′ ↦ 5′`, so `X₄ ↦ −T⁻¹x₁⁻¹x₂`.
    pub fn z_torus(d: usize) -> Result<Self> {
        let dq = crate::quiver::d_quiver();
        let eq = crate::quiver::e_quiver();
        let am = Amalgamation::new(&dq, &eq, &[("4'", "5'")], &["4'"])?;
        let df = Form::new(dq.eps2_matrix().to_vec());
        let ef = Form::new(eq.eps2_matrix().to_vec());
        let ctx = Self::d_torus(&df, 1, d)?.tensor(&Self::d_torus(&ef, 2, d)?)?;
        Self::pullback(&am, &ctx)
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn form(&self) -> &Arc<Form> {
        &self.form
    }

    pub fn image(&self, i: usize) -> &NOElem {
        &self.images[i]
    }
}

/// `Σ c_k q^{k/2}` with `q = e^ε`.
pub fn qcoeff_series(c: &QCoeff, d: usize) -> EpsPoly {
    let mut out = EpsPoly::zero(d);
    for (k, v) in c.terms() {
        out = &out + &q_series(&GaussRat::from_frac(k, 2), d).scale_const(v);
    }
    out
}

/// Evaluates a polynomial torus element in the representation.
pub fn rep_eval_noelem(e: &TorusElem, ctx: &RepContext) -> Result<NOElem> {
    let p: TPoly = e.as_poly().ok_or_else(|| {
        Error::Unrepresentable(format!("{} uncancelled localised inverse(s) in {e}", e.inverse_count()))
    })?;
    if p.form().as_ref() != ctx.form.as_ref() {
        return Err(Error::LegMismatch("element and representation live on different tori".into()));
    }
    let d = ctx.d;
    let n = ctx.form.rank();
    let eps2 = |i: usize, j: usize| ctx.form.pair2(&unit(n, i), &unit(n, j));
    let mut out = NOElem::zero(d);
    for (a, c) in p.terms() {
        // X^a = q^{Σ_{i<j} ε_ij a_i a_j} X_1^{a_1} ⋯ X_n^{a_n}
        let mut w = 0;
        for i in 0..n {
            for j in i + 1..n {
                w += eps2(i, j) * a[i] * a[j];
            }
        }
        let mut m = NOElem::scalar(qcoeff_series(&c.shift(w), d));
        for (i, &k) in a.iter().enumerate() {
            let g = if k > 0 { &ctx.images[i] } else { &ctx.inverses[i] };
            for _ in 0..k.unsigned_abs() {
                m = m.star(g);
            }
        }
        out = &out + &m;
    }
    Ok(out)
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// [`rep_eval_noelem`] as a perturbed Gaussian with trivial coupling.
pub fn rep_eval(e: &TorusElem, ctx: &RepContext) -> Result<PGauss> {
    PGauss::from_noelem(ctx.legs.clone(), &rep_eval_noelem(e, ctx)?)
}
