//! Quantum torus algebras `X_iX_j = q^{−2ε_ij}X_jX_i` with coefficients in
//! `ℚ(i)[q^{±1/2}]`, plus a lazily localised element type for mutation
//! images.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{GaussRat, LaurentT, MultiRat};

/// Coefficients: Laurent polynomials in `s = q^{1/2}`.
pub type QCoeff = LaurentT;

/// `q^{k/2}`.
pub fn q_half(k: i64) -> QCoeff {
    LaurentT::t_pow(k)
}

/// `q^k`.
pub fn q_pow(k: i64) -> QCoeff {
    LaurentT::t_pow(2 * k)
}

/// Prints a coefficient in powers of `q`.
pub fn fmt_qcoeff(c: &QCoeff) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, v) in c.terms() {
        let q = match k {
            0 => String::new(),
            2 => "q".into(),
            _ if k % 2 == 0 => format!("q^{}", k / 2),
            _ => format!("q^({k}/2)"),
        };
        let vs = v.to_string();
        parts.push(match (q.is_empty(), vs.as_str()) {
            (true, _) => vs,
            (false, "1") => q,
            (false, "-1") => format!("-{q}"),
            (false, _) if vs.contains(['+', ' ']) => format!("({vs}){q}"),
            (false, _) => format!("{vs}{q}"),
        });
    }
    parts.join(" + ").replace("+ -", "- ")
}

/// The skew form `2ε` of a seed, shared by every element of its torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    eps2: Vec<Vec<i64>>,
}

impl Form {
    pub fn new(eps2: Vec<Vec<i64>>) -> Arc<Form> {
        Arc::new(Form { eps2 })
    }

    pub fn rank(&self) -> usize {
        self.eps2.len()
    }

    /// `2⟨a, b⟩ = Σ 2ε_ij a_i b_j`.
    pub fn pair2(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                s += self.eps2[i][j] * ai * bj;
            }
        }
        s
    }

    /// Block sum of two forms (the torus of `Σ₁ ⊔ Σ₂`).
    pub fn direct_sum(&self, o: &Form) -> Arc<Form> {
        let (n, m) = (self.rank(), o.rank());
        let mut eps2 = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            eps2[i][..n].copy_from_slice(&self.eps2[i]);
        }
        for i in 0..m {
            eps2[n + i][n..].copy_from_slice(&o.eps2[i]);
        }
        Form::new(eps2)
    }
}

/// A Laurent polynomial in the quantum torus, in the Weyl-symmetric basis
/// `X^a`: `X^a X^b = q^{−⟨a,b⟩} X^{a+b}`.
#[derive(Clone, PartialEq, Eq)]
pub struct TPoly {
    form: Arc<Form>,
    terms: BTreeMap<Vec<i64>, QCoeff>,
}

impl TPoly {
    pub fn zero(form: &Arc<Form>) -> Self {
        TPoly { form: form.clone(), terms: BTreeMap::new() }
    }

    pub fn one(form: &Arc<Form>) -> Self {
        Self::scalar(form, QCoeff::one())
    }

    pub fn scalar(form: &Arc<Form>, c: QCoeff) -> Self {
        Self::mono(form, vec![0; form.rank()], c)
    }

    pub fn mono(form: &Arc<Form>, a: Vec<i64>, c: QCoeff) -> Self {
        let mut p = Self::zero(form);
        if !c.is_zero() {
            p.terms.insert(a, c);
        }
        p
    }

    /// The generator `X_i` (0-based).
    pub fn gen(form: &Arc<Form>, i: usize) -> Self {
        let mut a = vec![0; form.rank()];
        a[i] = 1;
        Self::mono(form, a, QCoeff::one())
    }

    pub fn form(&self) -> &Arc<Form> {
        &self.form
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, QCoeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(a, c)| a.iter().all(|&x| x == 0) && c.is_one())
    }

    /// `Some((a, c))` when the polynomial is a single term `c·X^a`.
    pub fn as_mono(&self) -> Option<(&Vec<i64>, &QCoeff)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    fn add_term(&mut self, a: Vec<i64>, c: QCoeff) {
        let sum = match self.terms.get(&a) {
            Some(v) => v + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&a);
        } else {
            self.terms.insert(a, sum);
        }
    }

    pub fn scale(&self, c: &QCoeff) -> Self {
        let mut out = Self::zero(&self.form);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v * c);
        }
        out
    }

    /// Inverse of a monomial; `None` otherwise (or when the coefficient
    /// is not a unit `c·q^{k/2}`).
    pub fn mono_inverse(&self) -> Option<Self> {
        let (a, c) = self.as_mono()?;
        if !c.is_monomial() {
            return None;
        }
        let (k, rest) = c.split_monomial();
        let cinv = rest.leading().inv().ok()?;
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        // (cX^a)⁻¹ = c⁻¹X^{−a} since ⟨a, −a⟩ = 0
        Some(Self::mono(&self.form, neg, QCoeff::monomial(cinv, -k)))
    }

    /// `X^b · P · X^{−b}`: each `X^a` picks up `q^{−2⟨b,a⟩}`.
    pub fn conj_mono(&self, b: &[i64]) -> Self {
        let mut out = Self::zero(&self.form);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v.shift(-2 * self.form.pair2(b, a)));
        }
        out
    }

    /// `q → 1`, with `X_i` read as the commuting variable `i + 1`.
    pub fn classical(&self) -> Result<MultiRat> {
        let mut out = MultiRat::zero();
        for (a, v) in &self.terms {
            let mut m = MultiRat::constant(v.eval(&GaussRat::one())?);
            for (i, &e) in a.iter().enumerate() {
                if e != 0 {
                    m = &m * &MultiRat::var(i + 1).pow(e)?;
                }
            }
            out = &out + &m;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.form), |acc, _| &acc * self)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in &self.terms {
            let mono: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| if e == 1 { format!("X{}", i + 1) } else { format!("X{}^{e}", i + 1) })
                .collect();
            let cs = fmt_qcoeff(c);
            let body = match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs.clone(),
                (false, "1") => mono.join(" "),
                (false, "-1") => format!("-{}", mono.join(" ")),
                (false, _) if c.terms().count() > 1 => format!("({cs}) {}", mono.join(" ")),
                (false, _) => format!("{cs} {}", mono.join(" ")),
            };
            if first {
                write!(f, "{body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Add<&TPoly> for &TPoly {
    type Output = TPoly;
    fn add(self, o: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (a, v) in &o.terms {
            out.add_term(a.clone(), v.clone());
        }
        out
    }
}

impl std::ops::Sub<&TPoly> for &TPoly {
    type Output = TPoly;
    fn sub(self, o: &TPoly) -> TPoly {
        self + &(-o)
    }
}

impl std::ops::Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        self.scale(&-QCoeff::one())
    }
}

impl std::ops::Mul<&TPoly> for &TPoly {
    type Output = TPoly;
    fn mul(self, o: &TPoly) -> TPoly {
        let mut out = TPoly::zero(&self.form);
        for (a, u) in &self.terms {
            for (b, v) in &o.terms {
                let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let c = (u * v).shift(-self.form.pair2(a, b));
                out.add_term(ab, c);
            }
        }
        out
    }
}

/// One factor of a product chain.
#[derive(Clone, PartialEq, Eq, Debug)]
enum Factor {
    Poly(TPoly),
    Inv(TorusElem),
}

/// An element of the skew field of fractions, kept as a sum of ordered
/// products whose factors are torus polynomials or formal inverses.
/// Adjacent `P·P⁻¹` pairs cancel; an element all of whose products are
/// polynomial collapses to a [`TPoly`].
#[derive(Clone, PartialEq, Eq)]
pub struct TorusElem {
    form: Arc<Form>,
    chains: Vec<Vec<Factor>>,
}

impl TorusElem {
    pub fn from_poly(p: TPoly) -> Self {
        let form = p.form.clone();
        let chains = if p.is_zero() { vec![] } else { vec![vec![Factor::Poly(p)]] };
        TorusElem { form, chains }
    }

    pub fn zero(form: &Arc<Form>) -> Self {
        TorusElem { form: form.clone(), chains: vec![] }
    }

    pub fn one(form: &Arc<Form>) -> Self {
        Self::from_poly(TPoly::one(form))
    }

    pub fn scalar(form: &Arc<Form>, c: QCoeff) -> Self {
        Self::from_poly(TPoly::scalar(form, c))
    }

    pub fn gen(form: &Arc<Form>, i: usize) -> Self {
        Self::from_poly(TPoly::gen(form, i))
    }

    pub fn form(&self) -> &Arc<Form> {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.chains.is_empty()
    }

    /// The polynomial this element equals, if every localised inverse has
    /// cancelled.
    pub fn as_poly(&self) -> Option<TPoly> {
        let mut out = TPoly::zero(&self.form);
        for ch in &self.chains {
            match ch.as_slice() {
                [] => out = &out + &TPoly::one(&self.form),
                [Factor::Poly(p)] => out = &out + p,
                _ => return None,
            }
        }
        Some(out)
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_poly().is_some()
    }

    /// Number of uncancelled inverse factors.
    pub fn inverse_count(&self) -> usize {
        self.chains.iter().flatten().filter(|f| matches!(f, Factor::Inv(_))).count()
    }

    fn from_chains(form: &Arc<Form>, chains: Vec<Vec<Factor>>) -> Self {
        let mut e = TorusElem { form: form.clone(), chains: chains.into_iter().filter_map(simplify_chain).collect() };
        e.collapse();
        e
    }

    /// Sums the polynomial chains into one.
    fn collapse(&mut self) {
        let mut poly = TPoly::zero(&self.form);
        let mut rest = Vec::new();
        for ch in self.chains.drain(..) {
            match ch.as_slice() {
                [] => poly = &poly + &TPoly::one(&self.form),
                [Factor::Poly(p)] => poly = &poly + p,
                _ => rest.push(ch),
            }
        }
        if !poly.is_zero() {
            rest.insert(0, vec![Factor::Poly(poly)]);
        }
        self.chains = rest;
    }

    pub fn inv(&self) -> Result<TorusElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(p) = self.as_poly() {
            return Ok(match p.mono_inverse() {
                Some(m) => TorusElem::from_poly(m),
                None => TorusElem { form: self.form.clone(), chains: vec![vec![Factor::Inv(self.clone())]] },
            });
        }
        if self.chains.len() > 1 {
            return Ok(TorusElem { form: self.form.clone(), chains: vec![vec![Factor::Inv(self.clone())]] });
        }
        let mut out = TorusElem::one(&self.form);
        for f in self.chains[0].iter().rev() {
            let fi = match f {
                Factor::Poly(p) => match p.mono_inverse() {
                    Some(m) => TorusElem::from_poly(m),
                    None => TorusElem {
                        form: self.form.clone(),
                        chains: vec![vec![Factor::Inv(TorusElem::from_poly(p.clone()))]],
                    },
                },
                Factor::Inv(e) => e.clone(),
            };
            out = &out * &fi;
        }
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<TorusElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok((0..e.unsigned_abs()).fold(TorusElem::one(&self.form), |acc, _| &acc * &base))
    }

    pub fn scale(&self, c: &QCoeff) -> TorusElem {
        self * &TorusElem::scalar(&self.form, c.clone())
    }

    /// `q → 1` into commuting rational functions (`X_i` ↦ variable `i+1`).
    pub fn classical(&self) -> Result<MultiRat> {
        let mut out = MultiRat::zero();
        for ch in &self.chains {
            let mut prod = MultiRat::one();
            for f in ch {
                let v = match f {
                    Factor::Poly(p) => p.classical()?,
                    Factor::Inv(e) => e.classical()?.inv()?,
                };
                prod = &prod * &v;
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Applies an algebra map given on generators (`images[i]` is the image
    /// of `X_i`) to a polynomial element. The image torus may differ.
    pub fn substitute(&self, images: &[TorusElem]) -> Result<TorusElem> {
        let poly = self
            .as_poly()
            .ok_or_else(|| Error::Unrepresentable("substitution into a localised element".into()))?;
        let target = images.first().map(|e| e.form.clone()).unwrap_or_else(|| self.form.clone());
        let mut out = TorusElem::zero(&target);
        for (a, c) in poly.terms() {
            // X^a = q^{Σ_{i<j} ε_ij a_i a_j} X_1^{a_1} ⋯ X_n^{a_n}
            let mut w = 0;
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    w += self.form.eps2[i][j] * a[i] * a[j];
                }
            }
            let mut m = TorusElem::scalar(&target, c.shift(w));
            for (i, &e) in a.iter().enumerate() {
                if e != 0 {
                    m = &m * &images[i].pow(e)?;
                }
            }
            out = &out + &m;
        }
        Ok(out)
    }
}

/// `P·P⁻¹` or `P⁻¹·P`.
fn cancels(a: &Factor, b: &Factor) -> bool {
    match (a, b) {
        (Factor::Inv(e), Factor::Poly(p)) | (Factor::Poly(p), Factor::Inv(e)) => e.as_poly().as_ref() == Some(p),
        _ => false,
    }
}

fn simplify_chain(ch: Vec<Factor>) -> Option<Vec<Factor>> {
    let mut out: Vec<Factor> = Vec::with_capacity(ch.len());
    for f in ch {
        let f = match f {
            Factor::Inv(e) => match e.as_poly().and_then(|p| p.mono_inverse()) {
                Some(m) => Factor::Poly(m),
                None => Factor::Inv(e),
            },
            f => f,
        };
        if let Factor::Poly(p) = &f {
            if p.is_zero() {
                return None;
            }
            if p.is_one() {
                continue;
            }
        }
        if out.last().is_some_and(|prev| cancels(prev, &f)) {
            out.pop();
            continue;
        }
        match (out.last_mut(), f) {
            (Some(Factor::Poly(prev)), Factor::Poly(p)) => {
                let prod = &*prev * &p;
                if prod.is_zero() {
                    return None;
                }
                *prev = prod;
                if prev.is_one() {
                    out.pop();
                }
            }
            (_, f) => out.push(f),
        }
    }
    Some(out)
}

impl fmt::Display for TorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chains.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .chains
            .iter()
            .map(|ch| {
                if ch.is_empty() {
                    return "1".into();
                }
                ch.iter()
                    .map(|fa| match fa {
                        Factor::Poly(p) if p.as_mono().is_some() => p.to_string(),
                        Factor::Poly(p) => format!("({p})"),
                        Factor::Inv(e) => format!("({e})^-1"),
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Add<&TorusElem> for &TorusElem {
    type Output = TorusElem;
    fn add(self, o: &TorusElem) -> TorusElem {
        let mut chains = self.chains.clone();
        chains.extend(o.chains.iter().cloned());
        TorusElem::from_chains(&self.form, chains)
    }
}

impl std::ops::Sub<&TorusElem> for &TorusElem {
    type Output = TorusElem;
    fn sub(self, o: &TorusElem) -> TorusElem {
        self + &(-o)
    }
}

impl std::ops::Neg for &TorusElem {
    type Output = TorusElem;
    fn neg(self) -> TorusElem {
        self.scale(&-QCoeff::one())
    }
}

impl std::ops::Mul<&TorusElem> for &TorusElem {
    type Output = TorusElem;
    fn mul(self, o: &TorusElem) -> TorusElem {
        let mut chains = Vec::with_capacity(self.chains.len() * o.chains.len());
        for a in &self.chains {
            for b in &o.chains {
                let mut c = a.clone();
                c.extend(b.iter().cloned());
                chains.push(c);
            }
        }
        TorusElem::from_chains(&self.form, chains)
    }
}

/// Reads expressions in `q`, `i` and `X1 … Xn` (1-based) as elements of one
/// quantum torus, keeping the written order of products.
pub struct TorusAlgebra(pub Arc<Form>);

impl crate::scalar::ExprAlgebra for TorusAlgebra {
    type Elem = TorusElem;

    fn int(&self, n: i64) -> TorusElem {
        TorusElem::scalar(&self.0, LaurentT::constant(GaussRat::from_int(n)))
    }

    fn name(&self, s: &str) -> Result<TorusElem> {
        match s {
            "q" => return Ok(TorusElem::scalar(&self.0, q_pow(1))),
            "i" => return Ok(TorusElem::scalar(&self.0, LaurentT::constant(GaussRat::i()))),
            _ => {}
        }
        match s.strip_prefix('X').and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if (1..=self.0.rank()).contains(&k) => Ok(TorusElem::gen(&self.0, k - 1)),
            _ => Err(Error::Parse(format!("unknown torus generator {s}"))),
        }
    }

    fn add(&self, a: &TorusElem, b: &TorusElem) -> TorusElem {
        a + b
    }

    fn neg(&self, a: &TorusElem) -> TorusElem {
        -a
    }

    fn mul(&self, a: &TorusElem, b: &TorusElem) -> TorusElem {
        a * b
    }

    fn div(&self, a: &TorusElem, b: &TorusElem) -> Result<TorusElem> {
        Ok(a * &b.inv()?)
    }

    fn pow(&self, a: &TorusElem, e: i64) -> Result<TorusElem> {
        a.pow(e)
    }
}
