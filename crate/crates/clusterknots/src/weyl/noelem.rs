use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{EpsPoly, EpsSum, GaussRat, RatFuncT};

/// Leg (tensor factor) label.
pub type Leg = u32;

/// A normal-ordered monomial `∏ x_l^{α_l} ∏ p_l^{β_l}`, stored as a sorted
/// list of `(leg, α, β)` with `(α, β) ≠ (0, 0)`. `α` may be negative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WMono(Vec<(Leg, i32, u32)>);

impl WMono {
    pub fn one() -> Self {
        WMono(Vec::new())
    }

    pub fn xp(leg: Leg, a: i32, b: u32) -> Self {
        if a == 0 && b == 0 {
            WMono::one()
        } else {
            WMono(vec![(leg, a, b)])
        }
    }

    pub fn x(leg: Leg) -> Self {
        Self::xp(leg, 1, 0)
    }

    pub fn p(leg: Leg) -> Self {
        Self::xp(leg, 0, 1)
    }

    pub fn from_entries<I: IntoIterator<Item = (Leg, i32, u32)>>(it: I) -> Self {
        let mut m = WMono::one();
        for (l, a, b) in it {
            m = m.mul_comm(&WMono::xp(l, a, b));
        }
        m
    }

    pub fn entries(&self) -> &[(Leg, i32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, leg: Leg) -> (i32, u32) {
        match self.0.binary_search_by_key(&leg, |e| e.0) {
            Ok(i) => (self.0[i].1, self.0[i].2),
            Err(_) => (0, 0),
        }
    }

    /// Replaces the exponents on `leg`.
    pub fn with(&self, leg: Leg, a: i32, b: u32) -> Self {
        let mut v = self.0.clone();
        match v.binary_search_by_key(&leg, |e| e.0) {
            Ok(i) => {
                if a == 0 && b == 0 {
                    v.remove(i);
                } else {
                    v[i] = (leg, a, b);
                }
            }
            Err(i) => {
                if a != 0 || b != 0 {
                    v.insert(i, (leg, a, b));
                }
            }
        }
        WMono(v)
    }

    /// Commutative (symbol) product: exponents add.
    pub fn mul_comm(&self, o: &WMono) -> WMono {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            let take = match (self.0.get(i), o.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    let e = (a.0, a.1 + b.1, a.2 + b.2);
                    i += 1;
                    j += 1;
                    e
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    i += 1;
                    *a
                }
                (Some(a), None) => {
                    i += 1;
                    *a
                }
                (_, Some(b)) => {
                    j += 1;
                    *b
                }
                (None, None) => unreachable!(),
            };
            if take.1 != 0 || take.2 != 0 {
                out.push(take);
            }
        }
        WMono(out)
    }

    pub fn legs(&self) -> impl Iterator<Item = Leg> + '_ {
        self.0.iter().map(|e| e.0)
    }

    /// Total degree `Σ |α| + β`.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|e| e.1.unsigned_abs() + e.2).sum()
    }

    pub fn rename(&self, f: &dyn Fn(Leg) -> Leg) -> WMono {
        WMono::from_entries(self.0.iter().map(|&(l, a, b)| (f(l), a, b)))
    }
}

impl fmt::Display for WMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for &(l, a, _) in &self.0 {
            match a {
                0 => {}
                1 => parts.push(format!("x{l}")),
                _ => parts.push(format!("x{l}^{a}")),
            }
        }
        for &(l, _, b) in &self.0 {
            match b {
                0 => {}
                1 => parts.push(format!("p{l}")),
                _ => parts.push(format!("p{l}^{b}")),
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for WMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn binom(n: u32, k: u32) -> GaussRat {
    let mut c = GaussRat::one();
    for i in 0..k {
        c = (&c * &GaussRat::from_int((n - i) as i64)).checked_div(&GaussRat::from_int((i + 1) as i64)).unwrap();
    }
    c
}

fn falling(a: i64, k: u32) -> GaussRat {
    let mut c = GaussRat::one();
    for i in 0..k as i64 {
        c = &c * &GaussRat::from_int(a - i);
    }
    c
}

type Entries = Vec<(Leg, i32, u32)>;

/// `N(m₁)·N(m₂)` as a sum of normal-ordered monomials: per leg
/// `x^{α₁}p^{β₁}·x^{α₂}p^{β₂} = Σ_k C(β₁,k)(α₂)_k x^{α₁+α₂−k}p^{β₁+β₂−k}`.
pub fn star_mono(m1: &WMono, m2: &WMono) -> Vec<(WMono, GaussRat)> {
    let legs: BTreeSet<Leg> = m1.legs().chain(m2.legs()).collect();
    let mut acc: Vec<(Entries, GaussRat)> = vec![(Vec::new(), GaussRat::one())];
    for l in legs {
        let (a1, b1) = m1.get(l);
        let (a2, b2) = m2.get(l);
        let kmax = if a2 >= 0 { b1.min(a2 as u32) } else { b1 };
        let mut opts = Vec::with_capacity(kmax as usize + 1);
        for k in 0..=kmax {
            let c = &binom(b1, k) * &falling(a2 as i64, k);
            if !c.is_zero() {
                opts.push(((l, a1 + a2 - k as i32, b1 + b2 - k), c));
            }
        }
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for (m, c) in &acc {
            for (e, c2) in &opts {
                let mut m = m.clone();
                if e.1 != 0 || e.2 != 0 {
                    m.push(*e);
                }
                next.push((m, c * c2));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(m, c)| (WMono(m), c)).collect()
}

/// Collects terms of a normal-ordered sum, reducing coefficients once at
/// the end.
pub struct NOAccum {
    d: usize,
    map: HashMap<WMono, EpsSum>,
}

impl NOAccum {
    pub fn new(d: usize) -> Self {
        NOAccum { d, map: HashMap::new() }
    }

    pub fn add(&mut self, m: WMono, c: &EpsPoly) {
        let d = self.d;
        self.map.entry(m).or_insert_with(|| EpsSum::new(d)).add(c);
    }

    /// Adds `r·a·b·N(m)`.
    pub fn add_product(&mut self, m: WMono, a: &EpsPoly, b: &EpsPoly, r: &GaussRat) {
        let d = self.d;
        self.map.entry(m).or_insert_with(|| EpsSum::new(d)).add_product(a, b, r);
    }

    pub fn add_elem(&mut self, e: &NOElem) {
        for (m, c) in &e.terms {
            self.add(m.clone(), c);
        }
    }

    pub fn finish(self) -> NOElem {
        let d = self.d;
        NOElem::from_terms(self.map.into_iter().map(|(m, c)| (m, c.finish())), d)
    }
}

/// A normal-ordered Weyl-algebra element `Σ c_m N(m)`, coefficients in
/// ℚ(i)(T)[ε]/(ε^{d+1}).
#[derive(Clone, PartialEq, Eq)]
pub struct NOElem {
    d: usize,
    terms: BTreeMap<WMono, EpsPoly>,
}

impl NOElem {
    pub fn zero(d: usize) -> Self {
        NOElem { d, terms: BTreeMap::new() }
    }

    pub fn one(d: usize) -> Self {
        Self::scalar(EpsPoly::one(d))
    }

    pub fn scalar(c: EpsPoly) -> Self {
        let d = c.order();
        Self::term(WMono::one(), c, d)
    }

    pub fn constant(c: RatFuncT, d: usize) -> Self {
        Self::scalar(EpsPoly::constant(c, d))
    }

    pub fn term(m: WMono, c: EpsPoly, d: usize) -> Self {
        let mut e = Self::zero(d);
        e.add_term(m, &c);
        e
    }

    pub fn mono(m: WMono, d: usize) -> Self {
        Self::term(m, EpsPoly::one(d), d)
    }

    pub fn x(leg: Leg, d: usize) -> Self {
        Self::mono(WMono::x(leg), d)
    }

    pub fn p(leg: Leg, d: usize) -> Self {
        Self::mono(WMono::p(leg), d)
    }

    pub fn from_terms<I: IntoIterator<Item = (WMono, EpsPoly)>>(it: I, d: usize) -> Self {
        let mut e = Self::zero(d);
        for (m, c) in it {
            e.add_term(m, &c);
        }
        e
    }

    pub fn add_term(&mut self, m: WMono, c: &EpsPoly) {
        let c = c.truncate(self.d);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WMono, &EpsPoly)> + '_ {
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
        self.terms.len() == 1 && self.terms.get(&WMono::one()).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, m: &WMono) -> EpsPoly {
        self.terms.get(m).cloned().unwrap_or_else(|| EpsPoly::zero(self.d))
    }

    /// The scalar (`x⁰p⁰`) coefficient.
    pub fn constant_term(&self) -> EpsPoly {
        self.coeff(&WMono::one())
    }

    pub fn legs(&self) -> BTreeSet<Leg> {
        self.terms.keys().flat_map(|m| m.legs().collect::<Vec<_>>()).collect()
    }

    pub fn truncate(&self, d: usize) -> NOElem {
        NOElem::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.truncate(d))), d)
    }

    pub fn scale(&self, c: &EpsPoly) -> NOElem {
        NOElem::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)), self.d.min(c.order()))
    }

    pub fn scale_rf(&self, c: &RatFuncT) -> NOElem {
        NOElem::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v.scale(c))), self.d)
    }

    pub fn scale_const(&self, c: &GaussRat) -> NOElem {
        NOElem::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v.scale_const(c))), self.d)
    }

    /// Multiplies by `ε^k`.
    pub fn shift_eps(&self, k: usize) -> NOElem {
        NOElem::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v.shift(k))), self.d)
    }

    /// The ε^k coefficient as an ε-free element (of the same order).
    pub fn eps_coeff(&self, k: usize) -> NOElem {
        NOElem::from_terms(
            self.terms.iter().map(|(m, v)| (m.clone(), EpsPoly::constant(v.coeff(k).clone(), self.d))),
            self.d,
        )
    }

    /// Divides by `ε^k`, assuming every coefficient has valuation ≥ k; the
    /// top `k` orders become zero.
    pub fn unshift_eps(&self, k: usize) -> Result<NOElem> {
        let d = self.d;
        let mut out = NOElem::zero(d);
        for (m, v) in &self.terms {
            if v.valuation().is_some_and(|vv| vv < k) {
                return Err(Error::Unrepresentable(format!("coefficient of {m} is not divisible by ε^{k}")));
            }
            let cs: Vec<RatFuncT> = (0..=d).map(|j| if j + k <= d { v.coeff(j + k).clone() } else { RatFuncT::zero() }).collect();
            out.add_term(m.clone(), &EpsPoly::from_coeffs(cs, d));
        }
        Ok(out)
    }

    pub fn map_coeffs<F: Fn(&EpsPoly) -> EpsPoly>(&self, f: F) -> NOElem {
        NOElem::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), f(v))), self.d)
    }

    /// The normal-ordered product.
    pub fn star(&self, o: &NOElem) -> NOElem {
        let d = self.d.min(o.d);
        let mut acc = NOAccum::new(d);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                for (m, r) in star_mono(m1, m2) {
                    acc.add_product(m, c1, c2, &r);
                }
            }
        }
        acc.finish()
    }

    /// Commutative product of symbols (no reordering corrections).
    pub fn sym_mul(&self, o: &NOElem) -> NOElem {
        let d = self.d.min(o.d);
        let mut acc = NOAccum::new(d);
        let one = GaussRat::one();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                acc.add_product(m1.mul_comm(m2), c1, c2, &one);
            }
        }
        acc.finish()
    }

    pub fn sym_pow(&self, e: u32) -> NOElem {
        let mut acc = NOElem::one(self.d);
        for _ in 0..e {
            acc = acc.sym_mul(self);
        }
        acc
    }

    pub fn star_pow(&self, e: u32) -> NOElem {
        let mut acc = NOElem::one(self.d);
        for _ in 0..e {
            acc = acc.star(self);
        }
        acc
    }

    /// Linear substitution on symbols: `x_l ↦ Σ c·x_m`, `p_l ↦ Σ c·p_m`
    /// (legs without an entry are fixed). A negative `x`-power is only
    /// allowed when its image is a single term.
    pub fn subst_linear(
        &self,
        xmap: &BTreeMap<Leg, Vec<(Leg, RatFuncT)>>,
        pmap: &BTreeMap<Leg, Vec<(Leg, RatFuncT)>>,
    ) -> Result<NOElem> {
        let d = self.d;
        let lin = |img: &[(Leg, RatFuncT)], is_x: bool| -> NOElem {
            NOElem::from_terms(
                img.iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| {
                    let mono = if is_x { WMono::x(*m) } else { WMono::p(*m) };
                    (mono, EpsPoly::constant(c.clone(), d))
                }),
                d,
            )
        };
        let mut cache: HashMap<(bool, Leg, i32), NOElem> = HashMap::new();
        let mut power = |is_x: bool, l: Leg, e: i32| -> Result<NOElem> {
            if let Some(v) = cache.get(&(is_x, l, e)) {
                return Ok(v.clone());
            }
            let map = if is_x { xmap } else { pmap };
            let v = match map.get(&l) {
                None => NOElem::mono(if is_x { WMono::xp(l, e, 0) } else { WMono::xp(l, 0, e as u32) }, d),
                Some(img) => {
                    let base = lin(img, is_x);
                    if e >= 0 {
                        base.sym_pow(e as u32)
                    } else {
                        if base.len() != 1 {
                            return Err(Error::Unrepresentable(format!(
                                "x{l}^{e} maps to the inverse of a non-monomial"
                            )));
                        }
                        let (m, c) = base.terms.iter().next().unwrap();
                        let (ml, _, _) = m.entries()[0];
                        let cinv = c.coeff(0).inv()?.pow(-e as i64)?;
                        NOElem::term(WMono::xp(ml, e, 0), EpsPoly::constant(cinv, d), d)
                    }
                }
            };
            cache.insert((is_x, l, e), v.clone());
            Ok(v)
        };
        let mut out = NOElem::zero(d);
        for (m, c) in &self.terms {
            let mut t = NOElem::term(WMono::one(), c.clone(), d);
            for &(l, a, b) in m.entries() {
                if a != 0 {
                    t = t.sym_mul(&power(true, l, a)?);
                }
                if b != 0 {
                    t = t.sym_mul(&power(false, l, b as i32)?);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Renames legs (terms landing on the same leg multiply as symbols).
    pub fn rename(&self, f: &dyn Fn(Leg) -> Leg) -> NOElem {
        NOElem::from_terms(self.terms.iter().map(|(m, c)| (m.rename(f), c.clone())), self.d)
    }

    /// `∂/∂p_l` of the symbol.
    pub fn d_p(&self, l: Leg) -> NOElem {
        NOElem::from_terms(
            self.terms.iter().filter(|(m, _)| m.get(l).1 > 0).map(|(m, c)| {
                let (a, b) = m.get(l);
                (m.with(l, a, b - 1), c.scale_const(&GaussRat::from_int(b as i64)))
            }),
            self.d,
        )
    }

    /// `∂/∂x_l` of the symbol.
    pub fn d_x(&self, l: Leg) -> NOElem {
        NOElem::from_terms(
            self.terms.iter().filter(|(m, _)| m.get(l).0 != 0).map(|(m, c)| {
                let (a, b) = m.get(l);
                (m.with(l, a - 1, b), c.scale_const(&GaussRat::from_int(a as i64)))
            }),
            self.d,
        )
    }

    /// Terms not involving `p_l`.
    pub fn without_p(&self, l: Leg) -> NOElem {
        NOElem::from_terms(
            self.terms.iter().filter(|(m, _)| m.get(l).1 == 0).map(|(m, c)| (m.clone(), c.clone())),
            self.d,
        )
    }

    /// The antiderivative in `p_l` with no `p_l`-free part.
    pub fn integrate_p(&self, l: Leg) -> NOElem {
        NOElem::from_terms(
            self.terms.iter().map(|(m, c)| {
                let (a, b) = m.get(l);
                (m.with(l, a, b + 1), c.scale_const(&GaussRat::from_frac(1, b as i64 + 1)))
            }),
            self.d,
        )
    }

    /// True when no monomial involves any `p`.
    pub fn is_p_free(&self) -> bool {
        self.terms.keys().all(|m| m.entries().iter().all(|e| e.2 == 0))
    }

    /// Inverse under `star`, when the ε⁰ part is `c·x^α` with `c` a nonzero
    /// scalar: `e = u₀(1 + v)` with `v = O(ε)`, inverted by a finite
    /// Neumann series.
    pub fn invert_unit(&self) -> Result<NOElem> {
        let d = self.d;
        let lead = self.eps_coeff(0);
        if lead.len() != 1 {
            return Err(Error::NonInvertible("ε⁰ part is not a monomial".into()));
        }
        let (m, c) = lead.terms.iter().next().unwrap();
        if m.entries().iter().any(|e| e.2 != 0) {
            return Err(Error::NonInvertible("ε⁰ part contains p".into()));
        }
        let c0 = c.coeff(0).inv()?;
        let inv_lead = NOElem::term(
            WMono::from_entries(m.entries().iter().map(|&(l, a, _)| (l, -a, 0))),
            EpsPoly::constant(c0, d),
            d,
        );
        // e = lead·(1 + v) with v = lead⁻¹·(e − lead)
        let v = inv_lead.star(&(self - &lead));
        let mut sum = NOElem::one(d);
        let mut pw = NOElem::one(d);
        let minus_v = -&v;
        for _ in 0..d {
            pw = pw.star(&minus_v);
            sum = &sum + &pw;
        }
        Ok(sum.star(&inv_lead))
    }

    /// Stable dump: one `monomial: coefficient` line per term.
    pub fn dump(&self) -> String {
        self.terms.iter().map(|(m, c)| format!("{m}: {c}")).collect::<Vec<_>>().join("\n")
    }
}

impl fmt::Display for NOElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for NOElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&NOElem> for &NOElem {
    type Output = NOElem;
    fn add(self, o: &NOElem) -> NOElem {
        let mut out = self.truncate(self.d.min(o.d));
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&NOElem> for &NOElem {
    type Output = NOElem;
    fn sub(self, o: &NOElem) -> NOElem {
        self + &(-o)
    }
}

impl Neg for &NOElem {
    type Output = NOElem;
    fn neg(self) -> NOElem {
        NOElem { d: self.d, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for NOElem {
    type Output = NOElem;
    fn add(self, o: NOElem) -> NOElem {
        &self + &o
    }
}

impl Sub for NOElem {
    type Output = NOElem;
    fn sub(self, o: NOElem) -> NOElem {
        &self - &o
    }
}

impl Neg for NOElem {
    type Output = NOElem;
    fn neg(self) -> NOElem {
        -&self
    }
}

/// A generator of the Weyl algebra, for literal words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    X(Leg),
    XInv(Leg),
    P(Leg),
}

/// Brings a word in the generators to normal order by repeatedly rewriting
/// `p x = x p + 1` and `p x⁻¹ = x⁻¹ p − x⁻²` (and swapping distinct legs).
pub fn rewrite_normal_order(word: &[Gen], d: usize) -> NOElem {
    let mut todo: Vec<(Vec<Gen>, GaussRat)> = vec![(word.to_vec(), GaussRat::one())];
    let mut done: HashMap<WMono, GaussRat> = HashMap::new();
    while let Some((w, c)) = todo.pop() {
        let pos = w.windows(2).position(|p| matches!(p[0], Gen::P(_)) && !matches!(p[1], Gen::P(_)));
        match pos {
            None => {
                let m = WMono::from_entries(w.iter().map(|g| match *g {
                    Gen::X(l) => (l, 1, 0),
                    Gen::XInv(l) => (l, -1, 0),
                    Gen::P(l) => (l, 0, 1),
                }));
                let e = done.entry(m).or_insert_with(GaussRat::zero);
                *e += &c;
            }
            Some(i) => {
                let (Gen::P(l), g) = (w[i], w[i + 1]) else { unreachable!() };
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                let same = match g {
                    Gen::X(m) | Gen::XInv(m) => m == l,
                    Gen::P(_) => false,
                };
                todo.push((swapped, c.clone()));
                if same {
                    let mut rest = w[..i].to_vec();
                    match g {
                        Gen::X(_) => {
                            rest.extend_from_slice(&w[i + 2..]);
                            todo.push((rest, c));
                        }
                        Gen::XInv(_) => {
                            rest.push(Gen::XInv(l));
                            rest.push(Gen::XInv(l));
                            rest.extend_from_slice(&w[i + 2..]);
                            todo.push((rest, -c));
                        }
                        Gen::P(_) => unreachable!(),
                    }
                }
            }
        }
    }
    NOElem::from_terms(done.into_iter().map(|(m, c)| (m, EpsPoly::constant(RatFuncT::constant(c), d))), d)
}

/// Reads normal-ordered symbols: `x<leg>`, `p<leg>`, `T`, `eps` and `i`,
/// with products taken in the commutative symbol (so `p1 x1` is `x1 p1`).
/// Only scalars may be divided by.
pub struct SymbolAlgebra {
    pub d: usize,
}

impl crate::scalar::ExprAlgebra for SymbolAlgebra {
    type Elem = NOElem;

    fn int(&self, n: i64) -> NOElem {
        NOElem::constant(RatFuncT::from_int(n), self.d)
    }

    fn name(&self, s: &str) -> Result<NOElem> {
        match s {
            "T" => return Ok(NOElem::constant(RatFuncT::t(), self.d)),
            "eps" => return Ok(NOElem::scalar(EpsPoly::eps(self.d))),
            "i" => return Ok(NOElem::constant(RatFuncT::one().scale(&GaussRat::i()), self.d)),
            _ => {}
        }
        let leg = |rest: &str| rest.parse::<Leg>().ok();
        match (s.chars().next(), leg(&s[1..])) {
            (Some('x'), Some(l)) => Ok(NOElem::x(l, self.d)),
            (Some('p'), Some(l)) => Ok(NOElem::p(l, self.d)),
            _ => Err(Error::Parse(format!("unknown symbol {s}"))),
        }
    }

    fn add(&self, a: &NOElem, b: &NOElem) -> NOElem {
        a + b
    }

    fn neg(&self, a: &NOElem) -> NOElem {
        -a
    }

    fn mul(&self, a: &NOElem, b: &NOElem) -> NOElem {
        a.sym_mul(b)
    }

    fn div(&self, a: &NOElem, b: &NOElem) -> Result<NOElem> {
        let c = scalar_part(b)?;
        Ok(a.scale(&c.inv()?))
    }

    fn pow(&self, a: &NOElem, e: i64) -> Result<NOElem> {
        if e >= 0 {
            return Ok(a.sym_pow(e as u32));
        }
        Ok(NOElem::scalar(scalar_part(a)?.pow(e)?))
    }
}

fn scalar_part(e: &NOElem) -> Result<EpsPoly> {
    if e.terms().any(|(m, _)| !m.is_one()) {
        return Err(Error::Parse("division by a non-scalar symbol".into()));
    }
    Ok(e.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_x2() {
        let d = 0;
        let got = NOElem::mono(WMono::xp(1, 0, 2), d).star(&NOElem::mono(WMono::xp(1, 2, 0), d));
        let want = rewrite_normal_order(&[Gen::P(1), Gen::P(1), Gen::X(1), Gen::X(1)], d);
        assert_eq!(got, want);
        assert_eq!(want.coeff(&WMono::one()), EpsPoly::constant(RatFuncT::from_int(2), d));
        assert_eq!(want.coeff(&WMono::xp(1, 1, 1)), EpsPoly::constant(RatFuncT::from_int(4), d));
    }

    #[test]
    fn inverse_x() {
        let d = 0;
        let got = NOElem::p(1, d).star(&NOElem::mono(WMono::xp(1, -1, 0), d));
        assert_eq!(got, rewrite_normal_order(&[Gen::P(1), Gen::XInv(1)], d));
    }
}
