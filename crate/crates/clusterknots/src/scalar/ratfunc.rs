use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussRat, LaurentT};
use crate::error::{Error, Result};

/// A rational function in `T` over ℚ(i), kept in lowest terms.
///
/// Canonical form: `den` is a monic polynomial with nonzero constant term and
/// all powers of `T` live in the Laurent numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncT {
    num: LaurentT,
    den: LaurentT,
}

impl RatFuncT {
    pub fn zero() -> Self {
        RatFuncT { num: LaurentT::zero(), den: LaurentT::one() }
    }

    pub fn one() -> Self {
        RatFuncT { num: LaurentT::one(), den: LaurentT::one() }
    }

    pub fn t() -> Self {
        Self::t_pow(1)
    }

    pub fn t_pow(e: i64) -> Self {
        Self::from_laurent(LaurentT::t_pow(e))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRat::from_int(n))
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::from_laurent(LaurentT::constant(c))
    }

    pub fn i() -> Self {
        Self::constant(GaussRat::i())
    }

    pub fn from_laurent(num: LaurentT) -> Self {
        RatFuncT { num, den: LaurentT::one() }
    }

    pub fn new(num: LaurentT, den: LaurentT) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentT, den: LaurentT) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (dl, dp) = den.split_monomial();
        let (nl, np) = num.split_monomial();
        let (np, dp) = if dp.is_constant() {
            (np, dp)
        } else {
            let g = np.gcd(&dp);
            if g.is_one() {
                (np, dp)
            } else {
                (np.div_exact(&g).expect("gcd divides"), dp.div_exact(&g).expect("gcd divides"))
            }
        };
        let inv = dp.leading().inv().expect("nonzero");
        RatFuncT { num: np.scale(&inv).shift(nl - dl), den: dp.scale(&inv) }
    }

    /// `normalize` for a pair already known to be coprime.
    fn normalize_coprime(num: LaurentT, den: LaurentT) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (dl, dp) = den.split_monomial();
        let inv = dp.leading().inv().expect("nonzero");
        RatFuncT { num: num.scale(&inv).shift(-dl), den: dp.scale(&inv) }
    }

    pub fn num(&self) -> &LaurentT {
        &self.num
    }

    pub fn den(&self) -> &LaurentT {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentT> {
        self.is_laurent().then_some(&self.num)
    }

    /// The constant value, if this is an element of ℚ(i).
    pub fn as_constant(&self) -> Option<GaussRat> {
        (self.is_laurent() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// True for `±T^k` (more generally `c·T^k` with `c = ±1`).
    pub fn is_signed_power(&self) -> bool {
        self.is_laurent() && self.num.is_monomial() && {
            let c = self.num.leading();
            c.is_one() || (-c).is_one()
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFuncT { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        // numerator and denominator stay coprime under powers
        Ok(RatFuncT { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn eval(&self, t: &GaussRat) -> Result<GaussRat> {
        let d = self.den.eval(t)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        self.num.eval(t)?.checked_div(&d)
    }

    /// `T ↦ T^k` for nonzero `k`.
    pub fn subs_pow(&self, k: i64) -> Result<Self> {
        Self::new(self.num.subs_pow(k)?, self.den.subs_pow(k)?)
    }

    /// Taylor coefficients at `T = 0` up to `T^n` (requires no pole at 0).
    pub fn series_at_zero(&self, n: i64) -> Result<Vec<GaussRat>> {
        if self.num.low() < 0 && !self.is_zero() {
            return Err(Error::Pole);
        }
        let len = (n + 1).max(0) as usize;
        let d0 = self.den.coeff(0).inv()?;
        let mut out = vec![GaussRat::zero(); len];
        for k in 0..len {
            let mut acc = self.num.coeff(k as i64);
            for j in 1..=k.min(self.den.high() as usize) {
                let t = &self.den.coeff(j as i64) * &out[k - j];
                acc -= &t;
            }
            out[k] = &acc * &d0;
        }
        Ok(out)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.fmt_var(var);
        }
        format!("({})/({})", self.num.fmt_var(var), self.den.fmt_var(var))
    }
}

impl fmt::Display for RatFuncT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("T"))
    }
}

impl fmt::Debug for RatFuncT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A sum of rational functions that defers normalisation: numerators are
/// grouped by denominator and reduced once in [`RatSum::finish`].
#[derive(Clone, Debug, Default)]
pub struct RatSum {
    parts: Vec<(LaurentT, LaurentT)>,
}

impl RatSum {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, num: LaurentT, den: LaurentT) {
        if num.is_zero() {
            return;
        }
        match self.parts.iter_mut().find(|(d, _)| *d == den) {
            Some((_, n)) => *n = &*n + &num,
            None => self.parts.push((den, num)),
        }
    }

    pub fn add(&mut self, a: &RatFuncT) {
        self.push(a.num.clone(), a.den.clone());
    }

    /// Adds `a·b·c` without reducing the product.
    pub fn add_product(&mut self, a: &RatFuncT, b: &RatFuncT, c: &GaussRat) {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return;
        }
        let num = (&a.num * &b.num).scale(c);
        let den = if a.den.is_one() {
            b.den.clone()
        } else if b.den.is_one() {
            a.den.clone()
        } else {
            &a.den * &b.den
        };
        self.push(num, den);
    }

    pub fn finish(self) -> RatFuncT {
        let mut parts = self.parts.into_iter().filter(|(_, n)| !n.is_zero());
        let Some((mut den, mut num)) = parts.next() else { return RatFuncT::zero() };
        for (e, n) in parts {
            let g = den.gcd(&e);
            let (eg, dg) = if g.is_one() { (e, den.clone()) } else { (e.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
            num = &(&num * &eg) + &(&n * &dg);
            den = &den * &eg;
        }
        RatFuncT::normalize(num, den)
    }
}

impl From<LaurentT> for RatFuncT {
    fn from(p: LaurentT) -> Self {
        Self::from_laurent(p)
    }
}

impl From<GaussRat> for RatFuncT {
    fn from(c: GaussRat) -> Self {
        Self::constant(c)
    }
}

impl Add<&RatFuncT> for &RatFuncT {
    type Output = RatFuncT;
    fn add(self, o: &RatFuncT) -> RatFuncT {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFuncT::normalize(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFuncT { num: &(&self.num * &o.den) + &o.num, den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatFuncT { num: &self.num + &(&o.num * &self.den), den: self.den.clone() };
        }
        // only the shared factor g of the denominators can cancel
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            return RatFuncT::normalize_coprime(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den);
        }
        let (a, b) = (self.den.div_exact(&g).unwrap(), o.den.div_exact(&g).unwrap());
        let num = &(&self.num * &b) + &(&o.num * &a);
        let h = num.gcd(&g);
        if h.is_one() {
            return RatFuncT::normalize_coprime(num, &(&a * &b) * &g);
        }
        let g = g.div_exact(&h).unwrap();
        RatFuncT::normalize_coprime(num.div_exact(&h).unwrap(), &(&a * &b) * &g)
    }
}

impl Sub<&RatFuncT> for &RatFuncT {
    type Output = RatFuncT;
    fn sub(self, o: &RatFuncT) -> RatFuncT {
        self + &(-o)
    }
}

impl Neg for &RatFuncT {
    type Output = RatFuncT;
    fn neg(self) -> RatFuncT {
        RatFuncT { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul<&RatFuncT> for &RatFuncT {
    type Output = RatFuncT;
    fn mul(self, o: &RatFuncT) -> RatFuncT {
        if self.is_zero() || o.is_zero() {
            return RatFuncT::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFuncT { num: &self.num * &o.num, den: LaurentT::one() };
        }
        if self.num.is_monomial() && self.den.is_one() {
            return RatFuncT { num: &self.num * &o.num, den: o.den.clone() };
        }
        if o.num.is_monomial() && o.den.is_one() {
            return RatFuncT { num: &self.num * &o.num, den: self.den.clone() };
        }
        RatFuncT::normalize(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Add for RatFuncT {
    type Output = RatFuncT;
    fn add(self, o: RatFuncT) -> RatFuncT {
        &self + &o
    }
}

impl Sub for RatFuncT {
    type Output = RatFuncT;
    fn sub(self, o: RatFuncT) -> RatFuncT {
        &self - &o
    }
}

impl Mul for RatFuncT {
    type Output = RatFuncT;
    fn mul(self, o: RatFuncT) -> RatFuncT {
        &self * &o
    }
}

impl Neg for RatFuncT {
    type Output = RatFuncT;
    fn neg(self) -> RatFuncT {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_common_factor() {
        let f = RatFuncT::new(LaurentT::from_ints(0, &[-1, 0, 1]), LaurentT::from_ints(0, &[-1, 1])).unwrap();
        assert_eq!(f, RatFuncT::from_laurent(LaurentT::from_ints(0, &[1, 1])));
        assert!(f.den().is_one());
    }

    #[test]
    fn denominator_is_monic_with_constant_term() {
        // 1 / (2T^3 - 2T^2) = (1/2)T^-2 / (T - 1)
        let f = RatFuncT::new(LaurentT::one(), LaurentT::from_ints(2, &[-2, 2])).unwrap();
        assert_eq!(f.den(), &LaurentT::from_ints(0, &[-1, 1]));
        assert_eq!(f.num(), &LaurentT::monomial(GaussRat::from_frac(1, 2), -2));
    }

    #[test]
    fn series() {
        // 1/(1-T) = 1 + T + T^2 + ...
        let f = RatFuncT::new(LaurentT::one(), LaurentT::from_ints(0, &[1, -1])).unwrap();
        let s = f.series_at_zero(4).unwrap();
        assert!(s.iter().all(|c| c.is_one()));
    }
}
