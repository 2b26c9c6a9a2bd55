use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mpoly::{MPoly, Mono};
use super::{GaussRat, LaurentT, RatFuncT};
use crate::error::{Error, Result};

/// A multivariate rational function over ℚ(i), reduced, with monic
/// denominator (grlex-leading coefficient 1).
///
/// By convention variable 0 is `T`; the remaining indices are whatever the
/// caller assigns (cluster symbols `x₁, x₂, …` or generic `X₁, X₂, …`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiRat {
    num: MPoly,
    den: MPoly,
}

impl MultiRat {
    pub fn zero() -> Self {
        MultiRat { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        MultiRat { num: MPoly::one(), den: MPoly::one() }
    }

    pub fn constant(c: GaussRat) -> Self {
        MultiRat { num: MPoly::constant(c), den: MPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRat::from_int(n))
    }

    pub fn var(v: usize) -> Self {
        MultiRat { num: MPoly::var(v), den: MPoly::one() }
    }

    /// The variable `T` (index 0).
    pub fn t() -> Self {
        Self::var(0)
    }

    pub fn from_poly(p: MPoly) -> Self {
        MultiRat { num: p, den: MPoly::one() }
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    /// Embeds a rational function in `T`.
    pub fn from_ratfunc(f: &RatFuncT) -> Self {
        let (nl, np) = f.num().split_monomial();
        let mut num = laurent_poly(&np);
        let mut den = laurent_poly(f.den());
        if nl >= 0 {
            num = num.mul_mono(&Mono::var_pow(0, nl as u32));
        } else {
            den = den.mul_mono(&Mono::var_pow(0, (-nl) as u32));
        }
        Self::reduce(num, den)
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::normalize_unit(num, den)
    }

    fn normalize_unit(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading().expect("nonzero").1.clone();
        if lc.is_one() {
            return MultiRat { num, den };
        }
        let inv = lc.inv().expect("nonzero");
        MultiRat { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Self::normalize_unit(b.num.pow(k), b.den.pow(k)))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiRat { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Substitutes rational functions for variables (missing entries stay).
    pub fn substitute(&self, images: &[Option<MultiRat>]) -> Result<Self> {
        let n = eval_poly(&self.num, images)?;
        let d = eval_poly(&self.den, images)?;
        n.checked_div(&d)
    }

    /// The value as a rational function of `T`, if only `T` occurs.
    pub fn as_ratfunc(&self) -> Option<RatFuncT> {
        if self.num.nvars() > 1 || self.den.nvars() > 1 {
            return None;
        }
        RatFuncT::new(poly_laurent(&self.num), poly_laurent(&self.den)).ok()
    }

    /// Reads `self` as `Σ_v c_v·x_v` for the variables `vars` (all ≠ 0) with
    /// coefficients in ℚ(i)(T); `None` if it is not such a linear form.
    pub fn as_linear_form(&self, vars: &[usize]) -> Option<Vec<RatFuncT>> {
        if self.den.terms().any(|(m, _)| m.exps().iter().skip(1).any(|&e| e > 0)) {
            return None;
        }
        let den = poly_laurent(&self.den);
        let mut coeffs: Vec<Vec<(i64, GaussRat)>> = vec![Vec::new(); vars.len()];
        for (m, c) in self.num.terms() {
            let hits: Vec<usize> = (1..m.exps().len()).filter(|&v| m.exp(v) > 0).collect();
            if hits.len() != 1 || m.exp(hits[0]) != 1 {
                return None;
            }
            let slot = vars.iter().position(|&v| v == hits[0])?;
            coeffs[slot].push((m.exp(0) as i64, c.clone()));
        }
        coeffs
            .into_iter()
            .map(|ts| RatFuncT::new(LaurentT::from_terms(ts), den.clone()).ok())
            .collect()
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.den.is_one() {
            return self.num.fmt_with(names);
        }
        format!("{}/{}", group(self.num.fmt_with(names)), group(self.den.fmt_with(names)))
    }
}

/// Parenthesises `s` unless it already is one parenthesised group.
fn group(s: String) -> String {
    let mut depth = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && k + 1 < s.len() {
                    return format!("({s})");
                }
            }
            _ if depth == 0 => return format!("({s})"),
            _ => {}
        }
    }
    s
}

/// Default names: `T` for 0, `x1`, `x2`, … otherwise.
pub fn default_name(v: usize) -> String {
    if v == 0 {
        "T".into()
    } else {
        format!("x{v}")
    }
}

fn laurent_poly(p: &LaurentT) -> MPoly {
    debug_assert!(p.low() >= 0 || p.is_zero());
    MPoly::from_terms(p.terms().map(|(e, c)| (Mono::var_pow(0, e as u32), c.clone())))
}

fn poly_laurent(p: &MPoly) -> LaurentT {
    LaurentT::from_terms(p.terms().map(|(m, c)| (m.exp(0) as i64, c.clone())))
}

fn eval_poly(p: &MPoly, images: &[Option<MultiRat>]) -> Result<MultiRat> {
    let mut out = MultiRat::zero();
    for (m, c) in p.terms() {
        let mut t = MultiRat::constant(c.clone());
        let mut rest = m.exps().to_vec();
        for (v, e) in rest.iter_mut().enumerate() {
            if *e == 0 {
                continue;
            }
            if let Some(img) = images.get(v).and_then(|x| x.as_ref()) {
                t = &t * &img.pow(*e as i64)?;
                *e = 0;
            }
        }
        t = &t * &MultiRat::from_poly(MPoly::term(GaussRat::one(), Mono::from_vec(rest)));
        out = &out + &t;
    }
    Ok(out)
}

impl fmt::Display for MultiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&default_name))
    }
}

impl fmt::Debug for MultiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&MultiRat> for &MultiRat {
    type Output = MultiRat;
    fn add(self, o: &MultiRat) -> MultiRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return MultiRat { num: &self.num + &o.num, den: MPoly::one() };
        }
        if self.den == o.den {
            return MultiRat::reduce(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return MultiRat { num: &(&self.num * &o.den) + &o.num, den: o.den.clone() };
        }
        if o.den.is_one() {
            return MultiRat { num: &self.num + &(&o.num * &self.den), den: self.den.clone() };
        }
        // a/b + c/d with g = gcd(b, d): only g can still divide the result
        let g = self.den.gcd(&o.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&o.num * &b1);
        if num.is_zero() {
            return MultiRat::zero();
        }
        let den = &(&b1 * &d1) * &g;
        if g.is_one() {
            return MultiRat::normalize_unit(num, den);
        }
        let h = num.gcd(&g);
        if h.is_one() {
            MultiRat::normalize_unit(num, den)
        } else {
            MultiRat::normalize_unit(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }
}

impl Sub<&MultiRat> for &MultiRat {
    type Output = MultiRat;
    fn sub(self, o: &MultiRat) -> MultiRat {
        self + &(-o)
    }
}

impl Neg for &MultiRat {
    type Output = MultiRat;
    fn neg(self) -> MultiRat {
        MultiRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul<&MultiRat> for &MultiRat {
    type Output = MultiRat;
    fn mul(self, o: &MultiRat) -> MultiRat {
        if self.is_zero() || o.is_zero() {
            return MultiRat::zero();
        }
        // cross-cancel: (a/b)(c/d) with gcd(a,d) and gcd(c,b) removed
        let g1 = if o.den.is_one() { MPoly::one() } else { self.num.gcd(&o.den) };
        let g2 = if self.den.is_one() { MPoly::one() } else { o.num.gcd(&self.den) };
        let (a, d) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), o.den.div_exact(&g1).unwrap())
        };
        let (c, b) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        MultiRat::normalize_unit(&a * &c, &b * &d)
    }
}

impl Add for MultiRat {
    type Output = MultiRat;
    fn add(self, o: MultiRat) -> MultiRat {
        &self + &o
    }
}

impl Sub for MultiRat {
    type Output = MultiRat;
    fn sub(self, o: MultiRat) -> MultiRat {
        &self - &o
    }
}

impl Mul for MultiRat {
    type Output = MultiRat;
    fn mul(self, o: MultiRat) -> MultiRat {
        &self * &o
    }
}

impl Neg for MultiRat {
    type Output = MultiRat;
    fn neg(self) -> MultiRat {
        -&self
    }
}
