use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ratfunc::RatSum;
use super::{GaussRat, RatFuncT};
use crate::error::{Error, Result};

/// A truncated power series `c₀ + c₁ε + … + c_dε^d` over ℚ(i)(T).
///
/// Binary operations between different orders truncate to the smaller one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EpsPoly {
    coeffs: Vec<RatFuncT>,
}

impl EpsPoly {
    pub fn zero(d: usize) -> Self {
        EpsPoly { coeffs: vec![RatFuncT::zero(); d + 1] }
    }

    pub fn one(d: usize) -> Self {
        Self::constant(RatFuncT::one(), d)
    }

    pub fn constant(c: RatFuncT, d: usize) -> Self {
        let mut coeffs = vec![RatFuncT::zero(); d + 1];
        coeffs[0] = c;
        EpsPoly { coeffs }
    }

    /// `ε` itself (zero when `d = 0`).
    pub fn eps(d: usize) -> Self {
        let mut e = Self::zero(d);
        if d >= 1 {
            e.coeffs[1] = RatFuncT::one();
        }
        e
    }

    pub fn from_coeffs(mut coeffs: Vec<RatFuncT>, d: usize) -> Self {
        coeffs.resize(d + 1, RatFuncT::zero());
        EpsPoly { coeffs }
    }

    /// Truncated expansion of `exp(a·ε)` for a rational constant `a`.
    pub fn exp_eps(a: &GaussRat, d: usize) -> Self {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut term = GaussRat::from_int(1);
        for k in 0..=d {
            coeffs.push(RatFuncT::constant(term.clone()));
            term = (&term * a).checked_div(&GaussRat::from_int(k as i64 + 1)).expect("nonzero");
        }
        EpsPoly { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &RatFuncT {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RatFuncT] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Lowest ε-power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, d: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(d + 1, RatFuncT::zero());
        EpsPoly { coeffs: c }
    }

    pub fn scale(&self, c: &RatFuncT) -> Self {
        EpsPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_const(&self, c: &GaussRat) -> Self {
        EpsPoly { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Multiplies by `ε^k`, dropping what falls off the end.
    pub fn shift(&self, k: usize) -> Self {
        let d = self.order();
        let mut coeffs = vec![RatFuncT::zero(); d + 1];
        for j in 0..=d {
            if j + k <= d {
                coeffs[j + k] = self.coeffs[j].clone();
            }
        }
        EpsPoly { coeffs }
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.order();
        let c0 = self.coeffs[0].inv().map_err(|_| Error::NonInvertible("zero constant term".into()))?;
        let mut out = vec![RatFuncT::zero(); d + 1];
        out[0] = c0.clone();
        for k in 1..=d {
            let mut acc = RatFuncT::zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out[k] = -&(&acc * &c0);
        }
        Ok(EpsPoly { coeffs: out })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.order());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn map<F: Fn(&RatFuncT) -> RatFuncT>(&self, f: F) -> Self {
        EpsPoly { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// Deferred sum of ε-series; see [`RatSum`].
#[derive(Clone, Debug)]
pub struct EpsSum {
    coeffs: Vec<RatSum>,
}

impl EpsSum {
    pub fn new(d: usize) -> Self {
        EpsSum { coeffs: vec![RatSum::new(); d + 1] }
    }

    pub fn add(&mut self, a: &EpsPoly) {
        for (s, c) in self.coeffs.iter_mut().zip(&a.coeffs) {
            if !c.is_zero() {
                s.add(c);
            }
        }
    }

    /// Adds `r·a·b`, truncated.
    pub fn add_product(&mut self, a: &EpsPoly, b: &EpsPoly, r: &GaussRat) {
        let d = self.coeffs.len() - 1;
        for (i, ai) in a.coeffs.iter().enumerate().take(d + 1) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate().take(d + 1 - i) {
                self.coeffs[i + j].add_product(ai, bj, r);
            }
        }
    }

    pub fn finish(self) -> EpsPoly {
        EpsPoly { coeffs: self.coeffs.into_iter().map(RatSum::finish).collect() }
    }
}

impl fmt::Display for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("[{c}]"),
                1 => format!("[{c}]ε"),
                _ => format!("[{c}]ε^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&EpsPoly> for &EpsPoly {
    type Output = EpsPoly;
    fn add(self, o: &EpsPoly) -> EpsPoly {
        let d = self.order().min(o.order());
        EpsPoly { coeffs: (0..=d).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect() }
    }
}

impl Sub<&EpsPoly> for &EpsPoly {
    type Output = EpsPoly;
    fn sub(self, o: &EpsPoly) -> EpsPoly {
        let d = self.order().min(o.order());
        EpsPoly { coeffs: (0..=d).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect() }
    }
}

impl Neg for &EpsPoly {
    type Output = EpsPoly;
    fn neg(self) -> EpsPoly {
        EpsPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&EpsPoly> for &EpsPoly {
    type Output = EpsPoly;
    fn mul(self, o: &EpsPoly) -> EpsPoly {
        let d = self.order().min(o.order());
        let mut coeffs = vec![RatFuncT::zero(); d + 1];
        for i in 0..=d {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=d - i {
                if !o.coeffs[j].is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
                }
            }
        }
        EpsPoly { coeffs }
    }
}

impl Add for EpsPoly {
    type Output = EpsPoly;
    fn add(self, o: EpsPoly) -> EpsPoly {
        &self + &o
    }
}

impl Sub for EpsPoly {
    type Output = EpsPoly;
    fn sub(self, o: EpsPoly) -> EpsPoly {
        &self - &o
    }
}

impl Mul for EpsPoly {
    type Output = EpsPoly;
    fn mul(self, o: EpsPoly) -> EpsPoly {
        &self * &o
    }
}

impl Neg for EpsPoly {
    type Output = EpsPoly;
    fn neg(self) -> EpsPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_product() {
        let d = 2;
        let a = EpsPoly::from_coeffs(vec![RatFuncT::one(), RatFuncT::one()], d);
        let b = EpsPoly::from_coeffs(vec![RatFuncT::one(), RatFuncT::from_int(-1), RatFuncT::one()], d);
        // (1 + ε)(1 - ε + ε²) = 1 + ε³ ≡ 1
        assert!((&a * &b).is_one());
    }

    #[test]
    fn inverse_of_exp() {
        let e = EpsPoly::exp_eps(&GaussRat::from_int(2), 3);
        let f = EpsPoly::exp_eps(&GaussRat::from_int(-2), 3);
        assert!((&e * &f).is_one());
        assert_eq!(e.inv().unwrap(), f);
    }
}
