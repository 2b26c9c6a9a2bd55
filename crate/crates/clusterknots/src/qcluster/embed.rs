//! The amalgamation embedding and the `U_q(sl₂)` embedding into the
//! D-torus.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quiver::Seed;

use super::torus::{q_pow, Form, QCoeff, TPoly, TorusElem};
use crate::scalar::GaussRat;

/// `X_Σ → X_{Σ₁} ⊗ X_{Σ₂}` for an amalgamation of `s1` and `s2` along
/// `glue`. The target torus lists `s1`'s vertices first, then `s2`'s.
#[derive(Clone, Debug)]
pub struct Amalgamation {
    glued: Seed,
    target: Arc<Form>,
    /// Per glued vertex: its index in `s1` and in `s2`, when present.
    sides: Vec<(Option<usize>, Option<usize>)>,
    n1: usize,
}

impl Amalgamation {
    pub fn new(s1: &Seed, s2: &Seed, glue: &[(&str, &str)], unfreeze: &[&str]) -> Result<Self> {
        let glued = crate::quiver::amalgamate(s1, s2, glue, unfreeze)?;
        let mut sides = Vec::with_capacity(glued.len());
        for v in glued.vertices() {
            let left = s1.index_of(v).ok();
            let right = match glue.iter().find(|(a, _)| a == v) {
                Some((_, b)) => Some(s2.index_of(b)?),
                None if left.is_none() => Some(s2.index_of(v)?),
                None => None,
            };
            if left.is_none() && right.is_none() {
                return Err(Error::UnknownVertex(v.clone()));
            }
            sides.push((left, right));
        }
        let f1 = Form::new(s1.eps2_matrix().to_vec());
        let f2 = Form::new(s2.eps2_matrix().to_vec());
        Ok(Amalgamation { glued, target: f1.direct_sum(&f2), sides, n1: s1.len() })
    }

    pub fn glued(&self) -> &Seed {
        &self.glued
    }

    pub fn target(&self) -> &Arc<Form> {
        &self.target
    }

    /// The image of the glued generator `X_i` (0-based).
    pub fn image_of_gen(&self, i: usize) -> TorusElem {
        let mut a = vec![0; self.target.rank()];
        let (l, r) = self.sides[i];
        if let Some(l) = l {
            a[l] = 1;
        }
        if let Some(r) = r {
            a[self.n1 + r] = 1;
        }
        TorusElem::from_poly(TPoly::mono(&self.target, a, QCoeff::one()))
    }

    /// Applies the embedding to a polynomial element of the glued torus.
    pub fn embed(&self, e: &TorusElem) -> Result<TorusElem> {
        if e.form().rank() != self.glued.len() {
            return Err(Error::InvalidAmalgamation("element does not live on the glued torus".into()));
        }
        let images: Vec<TorusElem> = (0..self.glued.len()).map(|i| self.image_of_gen(i)).collect();
        e.substitute(&images)
    }
}

/// Images of `E, F, K, K′` in the D-torus:
/// `E ↦ iX₄(1+qX₃)`, `F ↦ iX₁(1+qX₂)`, `K ↦ q²X₄X₃X₁`, `K′ ↦ q²X₁X₂X₄`.
#[derive(Clone, Debug)]
pub struct Sl2Images {
    pub e: TorusElem,
    pub f: TorusElem,
    pub k: TorusElem,
    pub kp: TorusElem,
}

pub fn sl2_embed(d: &Seed) -> Result<Sl2Images> {
    if d.len() != 4 {
        return Err(Error::InvalidSeed("the sl₂ embedding needs the 4-vertex D-quiver".into()));
    }
    let form = Form::new(d.eps2_matrix().to_vec());
    let x = |i: usize| TorusElem::gen(&form, i - 1);
    let one = TorusElem::one(&form);
    let i = TorusElem::scalar(&form, QCoeff::constant(GaussRat::i()));
    let q = q_pow(1);
    let q2 = q_pow(2);
    let e = &(&i * &x(4)) * &(&one + &x(3).scale(&q));
    let f = &(&i * &x(1)) * &(&one + &x(2).scale(&q));
    let k = (&(&x(4) * &x(3)) * &x(1)).scale(&q2);
    let kp = (&(&x(1) * &x(2)) * &x(4)).scale(&q2);
    Ok(Sl2Images { e, f, k, kp })
}
