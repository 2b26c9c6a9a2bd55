use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::coeff_body;
use super::GaussRat;

/// Exponent vector of a commutative monomial, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, e: u32) -> Self {
        let mut x = vec![0; v + 1];
        x[v] = e;
        Mono::from_vec(x)
    }

    pub fn from_vec(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Mono(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        Mono((0..n).map(|k| self.exp(k) + o.exp(k)).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().enumerate().all(|(k, &e)| e <= o.exp(k))
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient(&self, o: &Mono) -> Mono {
        let n = o.0.len();
        Mono::from_vec((0..n).map(|k| o.exp(k) - self.exp(k)).collect())
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let n = self.0.len().min(o.0.len());
        Mono::from_vec((0..n).map(|k| self.0[k].min(o.0[k])).collect())
    }

    fn with_exp(&self, v: usize, e: u32) -> Mono {
        let mut x = self.0.clone();
        if x.len() <= v {
            x.resize(v + 1, 0);
        }
        x[v] = e;
        Mono::from_vec(x)
    }
}

impl Ord for Mono {
    /// Graded lexicographic order.
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let n = self.0.len().max(o.0.len());
            for k in 0..n {
                match self.exp(k).cmp(&o.exp(k)) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A polynomial over ℚ(i) in commuting variables indexed `0, 1, …`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, GaussRat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::term(c, Mono::one())
    }

    pub fn var(v: usize) -> Self {
        Self::term(GaussRat::one(), Mono::var(v))
    }

    pub fn term(c: GaussRat, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, GaussRat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &GaussRat)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::one()).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        self.is_constant().then(|| self.terms[&Mono::one()].clone())
    }

    pub fn leading(&self) -> Option<(&Mono, &GaussRat)> {
        self.terms.iter().next_back()
    }

    /// One past the largest variable index that occurs.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussRat) -> MPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
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

    /// Scales so that the grlex-leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Largest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Mono::one() };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Divides every term by a monomial that divides all of them.
    pub fn div_mono(&self, m: &Mono) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(k, c)| (m.quotient(k), c.clone())).collect() }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading()?;
        if d.terms.len() == 1 {
            if !self.terms.keys().all(|m| dm.divides(m)) {
                return None;
            }
            let inv = dc.inv().ok()?;
            return Some(MPoly { terms: self.terms.iter().map(|(m, c)| (dm.quotient(m), c * &inv)).collect() });
        }
        let inv = dc.inv().ok()?;
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((rm, rc)) = r.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.quotient(rm);
            let qc = rc * &inv;
            for (m, c) in d.terms.iter() {
                r.add_term(m.mul(&qm), &-(c * &qc));
            }
            q.add_term(qm, &qc);
        }
        Some(q)
    }

    /// Coefficients with respect to variable `v`, as polynomials free of `v`.
    pub fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in self.terms.iter() {
            let e = m.exp(v) as usize;
            out[e].terms.insert(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_univariate(v: usize, cs: &[MPoly]) -> MPoly {
        let mut p = MPoly::zero();
        for (e, c) in cs.iter().enumerate() {
            for (m, a) in c.terms.iter() {
                p.add_term(m.with_exp(v, e as u32), a);
            }
        }
        p
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &MPoly) -> MPoly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.terms.len() == 1 || o.terms.len() == 1 {
            return MPoly::term(GaussRat::one(), self.mono_content().gcd(&o.mono_content()));
        }
        if self == o {
            return self.monic();
        }
        let ma = self.mono_content();
        let mb = o.mono_content();
        let gm = ma.gcd(&mb);
        let a = self.div_mono(&ma);
        let b = o.div_mono(&mb);
        gcd_rec(&a, &b).mul_mono(&gm).monic()
    }

    /// Substitutes polynomials for variables (missing entries stay put).
    pub fn substitute(&self, images: &[Option<MPoly>]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in self.terms.iter() {
            let mut t = MPoly::constant(c.clone());
            let mut rest = m.0.clone();
            for (v, e) in rest.iter_mut().enumerate() {
                if let Some(img) = images.get(v).and_then(|x| x.as_ref()) {
                    t = &t * &img.pow(*e);
                    *e = 0;
                }
            }
            out = &out + &t.mul_mono(&Mono::from_vec(rest));
        }
        out
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { names(v) } else { format!("{}^{}", names(v), e) })
                .collect();
            let mono = mono.join("*");
            let (neg, body) = coeff_body(c);
            let piece = match (mono.is_empty(), body) {
                (true, b) => b.unwrap_or_else(|| "1".into()),
                (false, Some(b)) => format!("{b}*{mono}"),
                (false, None) => mono,
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

fn content_in(p: &MPoly, v: usize) -> MPoly {
    let cs = p.to_univariate(v);
    let mut g = MPoly::zero();
    for c in cs.iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_constant() {
            return MPoly::one();
        }
    }
    g
}

fn highest_var(p: &MPoly) -> Option<usize> {
    (0..p.nvars()).rev().find(|&v| p.contains_var(v))
}

/// gcd of two polynomials with no monomial content.
fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let va = highest_var(a).unwrap();
    let vb = highest_var(b).unwrap();
    let v = va.max(vb);
    if !a.contains_var(v) {
        return a.gcd(&content_in(b, v));
    }
    if !b.contains_var(v) {
        return b.gcd(&content_in(a, v));
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = ca.gcd(&cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    (&c * &g).monic()
}

fn primitive_prs(mut a: MPoly, mut b: MPoly, v: usize) -> MPoly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b.monic();
        }
        if r.degree_in(v) == 0 {
            return MPoly::one();
        }
        let c = content_in(&r, v);
        a = b;
        b = r.div_exact(&c).expect("content divides");
    }
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
fn prem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let bu = b.to_univariate(v);
    let db = bu.len() - 1;
    let lb = &bu[db];
    let mut r = a.to_univariate(v);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bk) in bu.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = &r[idx] - &(bk * &lr);
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    MPoly::from_univariate(v, &r)
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&|v| format!("v{v}")))
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (m, c) in small.terms.iter() {
            r.add_term(m.clone(), c);
        }
        r
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in o.terms.iter() {
            r.add_term(m.clone(), &-c);
        }
        r
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in o.terms.iter() {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        r
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, o: MPoly) -> MPoly {
        &self + &o
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, o: MPoly) -> MPoly {
        &self - &o
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, o: MPoly) -> MPoly {
        &self * &o
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> MPoly {
        MPoly::var(v)
    }

    fn c(n: i64) -> MPoly {
        MPoly::constant(GaussRat::from_int(n))
    }

    #[test]
    fn multivariate_gcd() {
        let f = &(&x(0) + &x(1)) * &(&x(2) - &c(1));
        let g = &(&x(0) + &x(1)) * &(&(&x(2) * &x(0)) + &c(3));
        assert_eq!(f.gcd(&g), &x(0) + &x(1));
        let h = &(&x(1) * &x(1)) + &c(1);
        assert!(f.gcd(&h).is_one());
    }

    #[test]
    fn gcd_with_monomial_content() {
        let f = &(&x(1) * &x(2)) * &(&x(1) + &c(1));
        let g = &(&x(1) * &x(1)) * &(&x(1) + &c(1));
        assert_eq!(f.gcd(&g), &(&x(1) * &x(1)) + &x(1));
    }

    #[test]
    fn exact_division() {
        let a = &(&x(0) + &c(2)) * &(&x(1) - &x(0));
        assert_eq!(a.div_exact(&(&x(1) - &x(0))), Some(&x(0) + &c(2)));
        assert_eq!(a.div_exact(&(&x(1) + &c(5))), None);
    }
}
