//! Quantum cluster mutation.
//!
//! A [`QSeed`] tracks the current quiver together with the current cluster
//! variables written as elements of the *initial* quantum torus, exactly as
//! the classical [`crate::cluster::ClassicalSeed`] tracks rational
//! functions of the initial variables.

use std::sync::Arc;

use crate::cluster::{r_steps, Step};
use crate::error::{Error, Result};
use crate::quiver::Seed;

use super::torus::{q_pow, Form, TorusElem};

#[derive(Clone, Debug)]
pub struct QSeed {
    quiver: Seed,
    form: Arc<Form>,
    vars: Vec<TorusElem>,
}

impl QSeed {
    /// The initial seed: `X_i` are the torus generators.
    pub fn initial(quiver: Seed) -> Self {
        let form = Form::new(quiver.eps2_matrix().to_vec());
        let vars = (0..quiver.len()).map(|i| TorusElem::gen(&form, i)).collect();
        QSeed { quiver, form, vars }
    }

    pub fn quiver(&self) -> &Seed {
        &self.quiver
    }

    /// The torus of the initial seed, in which all variables live.
    pub fn form(&self) -> &Arc<Form> {
        &self.form
    }

    pub fn vars(&self) -> &[TorusElem] {
        &self.vars
    }

    /// `μ^q_k` (0-based):
    /// `X_k ↦ X_k⁻¹`;
    /// `X_i ↦ X_i ∏_{r=1}^{ε_ki} (1 + q^{2r−1}X_k⁻¹)⁻¹` when `ε_ki ≥ 0`;
    /// `X_i ↦ X_i ∏_{r=1}^{−ε_ki} (1 + q^{2r−1}X_k)` when `ε_ki ≤ 0`.
    pub fn mutate(&self, k: usize) -> Result<QSeed> {
        if k >= self.quiver.len() {
            return Err(Error::IndexOutOfRange { index: k, max: self.quiver.len() - 1 });
        }
        if self.quiver.is_frozen(k) {
            return Err(Error::FrozenVertex(self.quiver.label(k).into()));
        }
        let xk = &self.vars[k];
        let xk_inv = xk.inv()?;
        let one = TorusElem::one(&self.form);
        let mut vars = Vec::with_capacity(self.vars.len());
        for (i, xi) in self.vars.iter().enumerate() {
            if i == k {
                vars.push(xk_inv.clone());
                continue;
            }
            let e = self.quiver.eps_int(k, i);
            let mut v = xi.clone();
            for r in 1..=e.abs() {
                let q = q_pow(2 * r - 1);
                v = if e > 0 {
                    &v * &(&one + &xk_inv.scale(&q)).inv()?
                } else {
                    &v * &(&one + &xk.scale(&q))
                };
            }
            vars.push(v);
        }
        Ok(QSeed { quiver: self.quiver.mutate(k)?, form: self.form.clone(), vars })
    }

    /// Slot `i` receives slot `σ(i)`.
    pub fn permute(&self, sigma: &[usize]) -> Result<QSeed> {
        let quiver = self.quiver.permute(sigma)?;
        let vars = sigma.iter().map(|&s| self.vars[s].clone()).collect();
        Ok(QSeed { quiver, form: self.form.clone(), vars })
    }

    pub fn swap(&self, a: usize, b: usize) -> Result<QSeed> {
        for i in [a, b] {
            if i >= self.quiver.len() {
                return Err(Error::IndexOutOfRange { index: i + 1, max: self.quiver.len() });
            }
        }
        self.permute(&Seed::transposition(self.quiver.len(), a, b))
    }

    /// Applies 1-based steps in order.
    pub fn apply_steps(&self, steps: &[Step]) -> Result<QSeed> {
        let mut s = self.clone();
        for st in steps {
            s = match *st {
                Step::Mutate(k) => s.mutate(k - 1)?,
                Step::Swap(a, b) => s.swap(a - 1, b - 1)?,
            };
        }
        Ok(s)
    }

    /// The quantum `Ř_i^{±1}` on a disk seed.
    pub fn r_operator(&self, i: usize, sign: i8) -> Result<QSeed> {
        let n = (self.quiver.len().saturating_sub(1)) / 3;
        if self.quiver.len() != 3 * n + 1 || n < 2 {
            return Err(Error::InvalidSeed("R-operator needs a (3n+1)-vertex disk seed, n ≥ 2".into()));
        }
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, max: n - 1 });
        }
        let mut steps = r_steps(i);
        if sign < 0 {
            steps.reverse();
        }
        self.apply_steps(&steps)
    }
}

/// The mutation order printed with the R-matrix statement,
/// `σ₃,₅σ₂,₅σ₃,₆μ₄μ₆μ₂μ₄`, in application order; it differs from
/// [`r_steps`] only by exchanging the commuting `μ₂` and `μ₆`.
pub fn z_composite() -> Vec<Step> {
    use Step::*;
    vec![Mutate(4), Mutate(2), Mutate(6), Mutate(4), Swap(3, 6), Swap(2, 5), Swap(3, 5)]
}
