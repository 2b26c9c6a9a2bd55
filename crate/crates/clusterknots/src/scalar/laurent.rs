use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::GaussRat;
use crate::error::{Error, Result};

/// A Laurent polynomial in `T` over ℚ(i).
///
/// Stored densely: `coeffs[k]` is the coefficient of `T^(low + k)`. The first
/// and last stored coefficients are nonzero; zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentT {
    low: i64,
    coeffs: Vec<GaussRat>,
}

impl LaurentT {
    pub fn zero() -> Self {
        LaurentT { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: GaussRat, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentT { low: e, coeffs: vec![c] }
    }

    /// `T^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(GaussRat::one(), e)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, GaussRat)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![GaussRat::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += &c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Convenience constructor from integer coefficients starting at `low`.
    pub fn from_ints(low: i64, cs: &[i64]) -> Self {
        Self::from_dense(low, cs.iter().map(|&c| GaussRat::from_int(c)).collect())
    }

    pub fn from_dense(low: i64, mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentT { low: low + lead as i64, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True when the polynomial is a single term `c·T^k`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent present (0 for the zero polynomial).
    pub fn high(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeff(&self, e: i64) -> GaussRat {
        if e < self.low {
            return GaussRat::zero();
        }
        self.coeffs.get((e - self.low) as usize).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn leading(&self) -> GaussRat {
        self.coeffs.last().cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn trailing(&self) -> GaussRat {
        self.coeffs.first().cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRat)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentT { low: self.low, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentT { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Splits off the power of `T`: `self = T^low · p` with `p(0) ≠ 0`.
    pub fn split_monomial(&self) -> (i64, LaurentT) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        (self.low, LaurentT { low: 0, coeffs: self.coeffs.clone() })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut b = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Division with remainder, both operands treated as polynomials with
    /// `low ≥ 0`.
    pub fn divrem(&self, d: &LaurentT) -> Result<(LaurentT, LaurentT)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if (self.low < 0 && !self.is_zero()) || d.low < 0 {
            return Err(Error::Unrepresentable("divrem needs polynomials without negative powers".into()));
        }
        let dn = to_dense(d);
        let mut r = to_dense(self);
        let dd = dn.len() - 1;
        if r.len() < dn.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = dn[dd].inv()?;
        let mut q = vec![GaussRat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (l, dl) in dn.iter().enumerate() {
                let t = dl * &c;
                r[k + l] -= &t;
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::from_dense(0, q), Self::from_dense(0, r)))
    }

    /// Exact quotient; `None` if `d` does not divide `self` in ℚ(i)[T, T⁻¹].
    pub fn div_exact(&self, d: &LaurentT) -> Option<LaurentT> {
        if d.is_zero() {
            return None;
        }
        let (a, pa) = self.split_monomial();
        let (b, pd) = d.split_monomial();
        let (q, r) = pa.divrem(&pd).ok()?;
        if !r.is_zero() {
            return None;
        }
        Some(q.shift(a - b))
    }

    /// Monic gcd of the polynomial parts (powers of `T` are units).
    pub fn gcd(&self, other: &LaurentT) -> LaurentT {
        let (_, mut a) = self.split_monomial();
        let (_, mut b) = other.split_monomial();
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.coeffs.len() == 1 {
                return Self::one();
            }
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.split_monomial().1.monic();
        }
        a.monic()
    }

    pub fn monic(&self) -> LaurentT {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn eval(&self, t: &GaussRat) -> Result<GaussRat> {
        if self.is_zero() {
            return Ok(GaussRat::zero());
        }
        if self.low < 0 && t.is_zero() {
            return Err(Error::Pole);
        }
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        Ok(&acc * &t.pow(self.low)?)
    }

    /// `T ↦ T^k` for nonzero `k`.
    pub fn subs_pow(&self, k: i64) -> Result<LaurentT> {
        if k == 0 {
            return Err(Error::Parse("substitution T -> T^0 is not allowed".into()));
        }
        Ok(Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone()))))
    }

    /// If every exponent is divisible by `k > 0`, returns the polynomial in
    /// `S = T^k`.
    pub fn compress(&self, k: i64) -> Option<LaurentT> {
        if self.terms().any(|(e, _)| e.rem_euclid(k) != 0) {
            return None;
        }
        Some(Self::from_terms(self.terms().map(|(e, c)| (e / k, c.clone()))))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            let (neg, body) = coeff_body(c);
            let piece = if mono.is_empty() {
                body.unwrap_or_else(|| "1".into())
            } else {
                match body {
                    Some(b) => format!("{b}{mono}"),
                    None => mono,
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&piece);
        }
        out
    }
}

/// Splits a coefficient into a sign and a printable magnitude (`None` for 1).
pub(crate) fn coeff_body(c: &GaussRat) -> (bool, Option<String>) {
    if c.is_real() {
        let neg = c.re() < &num_rational::BigRational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if mag.is_one() {
            (neg, None)
        } else {
            (neg, Some(mag.to_string()))
        }
    } else {
        (false, Some(format!("({c})")))
    }
}

fn to_dense(p: &LaurentT) -> Vec<GaussRat> {
    let mut v = vec![GaussRat::zero(); p.low.max(0) as usize];
    v.extend(p.coeffs.iter().cloned());
    v
}

impl fmt::Display for LaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("T"))
    }
}

impl fmt::Debug for LaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&LaurentT> for &LaurentT {
    type Output = LaurentT;
    fn add(self, o: &LaurentT) -> LaurentT {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(o.low);
        let hi = self.high().max(o.high());
        let mut c = vec![GaussRat::zero(); (hi - lo + 1) as usize];
        for (k, a) in self.coeffs.iter().enumerate() {
            c[(self.low - lo) as usize + k] += a;
        }
        for (k, a) in o.coeffs.iter().enumerate() {
            c[(o.low - lo) as usize + k] += a;
        }
        LaurentT::from_dense(lo, c)
    }
}

impl Sub<&LaurentT> for &LaurentT {
    type Output = LaurentT;
    fn sub(self, o: &LaurentT) -> LaurentT {
        self + &(-o)
    }
}

impl Neg for &LaurentT {
    type Output = LaurentT;
    fn neg(self) -> LaurentT {
        LaurentT { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&LaurentT> for &LaurentT {
    type Output = LaurentT;
    fn mul(self, o: &LaurentT) -> LaurentT {
        if self.is_zero() || o.is_zero() {
            return LaurentT::zero();
        }
        let mut c = vec![GaussRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[k + l] += &(a * b);
                }
            }
        }
        LaurentT::from_dense(self.low + o.low, c)
    }
}

impl Add for LaurentT {
    type Output = LaurentT;
    fn add(self, o: LaurentT) -> LaurentT {
        &self + &o
    }
}

impl Sub for LaurentT {
    type Output = LaurentT;
    fn sub(self, o: LaurentT) -> LaurentT {
        &self - &o
    }
}

impl Mul for LaurentT {
    type Output = LaurentT;
    fn mul(self, o: LaurentT) -> LaurentT {
        &self * &o
    }
}

impl Neg for LaurentT {
    type Output = LaurentT;
    fn neg(self) -> LaurentT {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, cs: &[i64]) -> LaurentT {
        LaurentT::from_ints(low, cs)
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (T-1)(T+2) and (T-1)(T^2+1)
        let a = &p(0, &[-1, 1]) * &p(0, &[2, 1]);
        let b = &p(0, &[-1, 1]) * &p(0, &[1, 0, 1]);
        assert_eq!(a.gcd(&b), p(0, &[-1, 1]));
    }

    #[test]
    fn substitution_examples() {
        let f = p(-2, &[1, 0, -1, 0, 1]);
        assert_eq!(f.eval(&GaussRat::one()).unwrap(), GaussRat::one());
        let g = p(0, &[1, 0, -1, 0, 1]);
        assert_eq!(g.subs_pow(2).unwrap(), p(0, &[1, 0, 0, 0, -1, 0, 0, 0, 1]));
        assert_eq!(p(-1, &[1]).eval(&GaussRat::zero()), Err(Error::Pole));
    }

    #[test]
    fn display() {
        assert_eq!(p(0, &[1, -1, 1]).fmt_var("S"), "S^2 - S + 1");
        assert_eq!(p(0, &[-1, 3, -1]).fmt_var("S"), "-S^2 + 3S - 1");
        assert_eq!(p(-1, &[1, -1, 1]).to_string(), "T - 1 + T^-1");
    }
}
