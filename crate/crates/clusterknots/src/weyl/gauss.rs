use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;

use super::noelem::{Leg, NOAccum, NOElem, WMono};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{EpsPoly, GaussRat, RatFuncT};

/// A perturbed Gaussian `ω · N(exp(xᵀ(Λ−1)p) · S)` on an ordered leg list.
///
/// Internally the perturbation is kept as the symbol `S` that sits next to
/// the Gaussian inside one `N(…)`; [`PGauss::pert`] converts to the
/// factored form `ω·φ(Λ)·N(P)`.
#[derive(Clone)]
pub struct PGauss {
    legs: Vec<Leg>,
    omega: EpsPoly,
    lambda: Matrix,
    sym: NOElem,
}

/// Which side a Gaussian conjugation acts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `φ(Λ) e φ(Λ)⁻¹`
    Left,
    /// `φ(Λ)⁻¹ e φ(Λ)`
    Right,
}

fn lin_x_images(legs: &[Leg], lambda: &Matrix) -> BTreeMap<Leg, Vec<(Leg, RatFuncT)>> {
    // x_l ↦ Σ_a x_a Λ_al
    legs.iter()
        .enumerate()
        .map(|(c, &l)| (l, legs.iter().enumerate().map(|(r, &a)| (a, lambda.get(r, c).clone())).collect()))
        .collect()
}

/// Substitutions realising `φ(Λ)·e·φ(Λ)⁻¹` (left) or `φ(Λ)⁻¹·e·φ(Λ)` (right)
/// on generators: left sends `x_j ↦ Σ_i x_i Λ_ij`, `p_j ↦ Σ_i p_i (Λ⁻¹)_ji`.
pub fn conj_by_gauss(legs: &[Leg], lambda: &Matrix, e: &NOElem, side: Side) -> Result<NOElem> {
    let inv = lambda.inverse()?;
    let (fx, fp) = match side {
        Side::Left => (lambda, &inv),
        Side::Right => (&inv, lambda),
    };
    let xmap = lin_x_images(legs, fx);
    let pmap: BTreeMap<Leg, Vec<(Leg, RatFuncT)>> = legs
        .iter()
        .enumerate()
        .map(|(j, &l)| (l, legs.iter().enumerate().map(|(i, &b)| (b, fp.get(j, i).clone())).collect()))
        .collect();
    e.subst_linear(&xmap, &pmap)
}

/// `Ψ^m_{i,j}(A)`: the `m×m` identity with the 2×2 block `A` at rows and
/// columns `i, j` (1-based).
pub fn psi_insert(a: &Matrix, i: usize, j: usize, m: usize) -> Result<Matrix> {
    if i == j || i == 0 || j == 0 || i > m || j > m || a.rows() != 2 || a.cols() != 2 {
        return Err(Error::LegMismatch(format!("cannot insert a 2×2 block at ({i}, {j}) of {m}")));
    }
    let mut out = Matrix::identity(m);
    let idx = [i - 1, j - 1];
    for r in 0..2 {
        for c in 0..2 {
            out.set(idx[r], idx[c], a.get(r, c).clone());
        }
    }
    Ok(out)
}

fn binom(n: u32, k: u32) -> GaussRat {
    let mut c = GaussRat::one();
    for i in 0..k {
        c = (&c * &GaussRat::from_int((n - i) as i64)).checked_div(&GaussRat::from_int((i + 1) as i64)).unwrap();
    }
    c
}

impl PGauss {
    /// `ω·φ(Λ)·N(P)` on `legs` (Λ indexed by position in `legs`).
    pub fn new(legs: Vec<Leg>, omega: EpsPoly, lambda: Matrix, pert: &NOElem) -> Result<Self> {
        if lambda.rows() != legs.len() || !lambda.is_square() {
            return Err(Error::LegMismatch("coupling matrix does not match legs".into()));
        }
        if pert.legs().iter().any(|l| !legs.contains(l)) {
            return Err(Error::LegMismatch("perturbation uses a leg outside the Gaussian".into()));
        }
        if lambda.det().is_zero() {
            return Err(Error::Singular);
        }
        let d = omega.order().min(pert.order());
        // φ(Λ)N(P) = N(e^{x(Λ−1)p} P(xΛ, p))
        let sym = pert.truncate(d).subst_linear(&lin_x_images(&legs, &lambda), &BTreeMap::new())?;
        Ok(PGauss { legs, omega: omega.truncate(d), lambda, sym })
    }

    /// `φ(Λ)`.
    pub fn phi(legs: Vec<Leg>, lambda: Matrix, d: usize) -> Result<Self> {
        Self::new(legs, EpsPoly::one(d), lambda, &NOElem::one(d))
    }

    /// An element with trivial Gaussian part.
    pub fn from_noelem(legs: Vec<Leg>, e: &NOElem) -> Result<Self> {
        let n = legs.len();
        Self::new(legs, EpsPoly::one(e.order()), Matrix::identity(n), e)
    }

    pub fn one(legs: Vec<Leg>, d: usize) -> Self {
        Self::from_noelem(legs, &NOElem::one(d)).expect("identity")
    }

    fn from_parts(legs: Vec<Leg>, omega: EpsPoly, lambda: Matrix, sym: NOElem) -> Self {
        PGauss { legs, omega, lambda, sym }
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn order(&self) -> usize {
        self.omega.order()
    }

    pub fn omega(&self) -> &EpsPoly {
        &self.omega
    }

    pub fn lambda(&self) -> &Matrix {
        &self.lambda
    }

    /// The symbol `S` next to the Gaussian inside `N(…)`.
    pub fn symbol(&self) -> &NOElem {
        &self.sym
    }

    /// `P` in the factored form `ω·φ(Λ)·N(P)`.
    pub fn pert(&self) -> Result<NOElem> {
        let inv = self.lambda.inverse()?;
        self.sym.subst_linear(&lin_x_images(&self.legs, &inv), &BTreeMap::new())
    }

    fn pos(&self, l: Leg) -> Result<usize> {
        self.legs.iter().position(|&x| x == l).ok_or_else(|| Error::LegMismatch(format!("no leg {l}")))
    }

    pub fn truncate(&self, d: usize) -> PGauss {
        PGauss::from_parts(self.legs.clone(), self.omega.truncate(d), self.lambda.clone(), self.sym.truncate(d))
    }

    pub fn scale(&self, c: &EpsPoly) -> PGauss {
        PGauss::from_parts(self.legs.clone(), &self.omega * c, self.lambda.clone(), self.sym.truncate(c.order()))
    }

    /// Legs sorted ascending, the scalar part of the symbol absorbed into
    /// `ω` when it is invertible.
    pub fn canonical(&self) -> PGauss {
        let mut idx: Vec<usize> = (0..self.legs.len()).collect();
        idx.sort_by_key(|&i| self.legs[i]);
        let legs: Vec<Leg> = idx.iter().map(|&i| self.legs[i]).collect();
        let lambda = Matrix::from_fn(idx.len(), idx.len(), |r, c| self.lambda.get(idx[r], idx[c]).clone());
        let c0 = self.sym.constant_term();
        let (omega, sym) = match c0.inv() {
            Ok(ci) if !c0.is_one() => (&self.omega * &c0, self.sym.scale(&ci)),
            _ => (self.omega.clone(), self.sym.clone()),
        };
        PGauss::from_parts(legs, omega, lambda, sym)
    }

    /// Exact equality of the represented elements.
    pub fn same_as(&self, o: &PGauss) -> bool {
        let a = self.canonical();
        let b = o.canonical();
        if a.legs != b.legs || a.lambda != b.lambda {
            // legs carrying the identity Gaussian and no perturbation are inert
            let (ea, eb) = (a.extend_legs(&b.legs), b.extend_legs(&a.legs));
            if ea.legs.len() == a.legs.len() && eb.legs.len() == b.legs.len() {
                return false;
            }
            return ea.same_as(&eb);
        }
        if a.omega == b.omega && a.sym == b.sym {
            return true;
        }
        a.sym.scale(&a.omega) == b.sym.scale(&b.omega)
    }

    pub fn is_one(&self) -> bool {
        let c = self.canonical();
        c.lambda.is_identity() && c.sym.scale(&c.omega).is_one()
    }

    /// Adds identity legs so that all of `legs` are present.
    pub fn extend_legs(&self, legs: &[Leg]) -> PGauss {
        let extra: Vec<Leg> = legs.iter().copied().filter(|l| !self.legs.contains(l)).collect();
        if extra.is_empty() {
            return self.clone();
        }
        let mut all = self.legs.clone();
        all.extend(extra.iter().copied());
        let lambda = self.lambda.direct_sum(&Matrix::identity(extra.len()));
        PGauss::from_parts(all, self.omega.clone(), lambda, self.sym.clone())
    }

    /// Renames legs by a bijection.
    pub fn rename(&self, f: &dyn Fn(Leg) -> Leg) -> PGauss {
        PGauss::from_parts(
            self.legs.iter().map(|&l| f(l)).collect(),
            self.omega.clone(),
            self.lambda.clone(),
            self.sym.rename(f),
        )
    }

    pub fn rename_map(&self, pairs: &[(Leg, Leg)]) -> PGauss {
        let m: HashMap<Leg, Leg> = pairs.iter().copied().collect();
        self.rename(&|l| *m.get(&l).unwrap_or(&l))
    }

    /// Tensor product on disjoint leg sets.
    pub fn tensor(&self, o: &PGauss) -> Result<PGauss> {
        if self.legs.iter().any(|l| o.legs.contains(l)) {
            return Err(Error::LegMismatch("tensor factors share a leg".into()));
        }
        let mut legs = self.legs.clone();
        legs.extend(o.legs.iter().copied());
        Ok(PGauss::from_parts(
            legs,
            &self.omega * &o.omega,
            self.lambda.direct_sum(&o.lambda),
            self.sym.sym_mul(&o.sym),
        ))
    }

    /// `m_{i,j→k}`: the leg-`i` content times the leg-`j` content (in that
    /// order), placed on leg `k`.
    ///
    /// With `E = Λ − 1` and `c = E_ji` the Gaussian contracts in closed form,
    /// `E′ = E + s·E[:,i]⊗E[j,:]` with `s = 1/(1−c)`, while each symbol
    /// monomial has its `x_j`, `p_i` dependence shifted by Gaussian moments.
    pub fn contract(&self, i: Leg, j: Leg, k: Leg) -> Result<PGauss> {
        if i == j {
            return Err(Error::LegMismatch("contraction needs two distinct legs".into()));
        }
        if k != i && k != j && self.legs.contains(&k) {
            return Err(Error::LegMismatch(format!("target leg {k} is in use")));
        }
        let pi = self.pos(i)?;
        let pj = self.pos(j)?;
        let n = self.legs.len();
        let d = self.order();
        let one = RatFuncT::one();
        let e = |r: usize, c: usize| -> RatFuncT {
            if r == c {
                self.lambda.get(r, c) - &one
            } else {
                self.lambda.get(r, c).clone()
            }
        };
        let c = e(pj, pi);
        let denom = &one - &c;
        if denom.is_zero() {
            return Err(Error::SingularContraction);
        }
        let s = denom.inv()?;
        let col_i: Vec<RatFuncT> = (0..n).map(|r| e(r, pi)).collect();
        let row_j: Vec<RatFuncT> = (0..n).map(|cc| e(pj, cc)).collect();
        let mut ep = Matrix::from_fn(n, n, |r, cc| {
            let base = e(r, cc);
            if col_i[r].is_zero() || row_j[cc].is_zero() {
                base
            } else {
                &base + &(&s * &(&col_i[r] * &row_j[cc]))
            }
        });
        // Moments: η ↔ p_i shift pairs with s·b, ζ ↔ x_j shift with s·a.
        let sa = NOElem::from_terms(
            (0..n).filter(|&r| !col_i[r].is_zero()).map(|r| {
                (WMono::x(self.legs[r]), EpsPoly::constant(&s * &col_i[r], d))
            }),
            d,
        );
        let sb = NOElem::from_terms(
            (0..n).filter(|&cc| !row_j[cc].is_zero()).map(|cc| {
                (WMono::p(self.legs[cc]), EpsPoly::constant(&s * &row_j[cc], d))
            }),
            d,
        );
        let mut sa_pows = vec![NOElem::one(d)];
        let mut sb_pows = vec![NOElem::one(d)];
        let mut moments: HashMap<(u32, u32), NOElem> = HashMap::new();
        let mut moment = |w: u32, u: u32| -> NOElem {
            if let Some(m) = moments.get(&(w, u)) {
                return m.clone();
            }
            while sa_pows.len() <= u as usize {
                let nx = sa_pows.last().unwrap().sym_mul(&sa);
                sa_pows.push(nx);
            }
            while sb_pows.len() <= w as usize {
                let nx = sb_pows.last().unwrap().sym_mul(&sb);
                sb_pows.push(nx);
            }
            let mut acc = NOElem::zero(d);
            let mut sk = RatFuncT::one();
            let mut kfact = GaussRat::one();
            for kk in 0..=w.min(u) {
                if kk > 0 {
                    sk = &sk * &s;
                    kfact = &kfact * &GaussRat::from_int(kk as i64);
                }
                let coef = &(&binom(w, kk) * &binom(u, kk)) * &kfact;
                let t = sb_pows[(w - kk) as usize]
                    .sym_mul(&sa_pows[(u - kk) as usize])
                    .scale_rf(&sk.scale(&coef));
                acc = &acc + &t;
            }
            moments.insert((w, u), acc.clone());
            acc
        };
        let mut acc = NOAccum::new(d);
        for (m, coef) in self.sym.terms() {
            let (aj, bj) = m.get(j);
            let (ai, bi) = m.get(i);
            if aj < 0 {
                return Err(Error::Unrepresentable(format!("x{j}^{aj} on the contracted right leg")));
            }
            let aj = aj as u32;
            let rest_j = m.with(j, 0, bj);
            let rest = rest_j.with(i, ai, 0);
            for u in 0..=aj {
                for w in 0..=bi {
                    let cb = &binom(aj, u) * &binom(bi, w);
                    let base = rest.with(j, (aj - u) as i32, bj);
                    let base = base.with(i, ai, bi - w);
                    for (mm, mc) in moment(w, u).terms() {
                        acc.add_product(mm.mul_comm(&base), mc, coef, &cb);
                    }
                }
            }
        }
        let sym = acc.finish();
        // rename legs i, j → k
        let f = |l: Leg| if l == i || l == j { k } else { l };
        let sym = sym.rename(&f);
        let keep: Vec<usize> = (0..n).filter(|&r| r != pi && r != pj).collect();
        let mut legs: Vec<Leg> = keep.iter().map(|&r| self.legs[r]).collect();
        legs.push(k);
        let m = legs.len();
        let src = |r: usize| -> Vec<usize> {
            if r + 1 == m {
                vec![pi, pj]
            } else {
                vec![keep[r]]
            }
        };
        let lambda = Matrix::from_fn(m, m, |r, cc| {
            let mut acc = RatFuncT::zero();
            for &a in &src(r) {
                for &b in &src(cc) {
                    acc = &acc + ep.get(a, b);
                }
            }
            if r == cc {
                acc = &acc + &one;
            }
            acc
        });
        ep = lambda;
        let omega = self.omega.scale(&s);
        Ok(PGauss::from_parts(legs, omega, ep, sym))
    }

    /// The product in the algebra on the union of both leg sets.
    pub fn mul(&self, o: &PGauss) -> Result<PGauss> {
        let all: Vec<Leg> = {
            let mut v = self.legs.clone();
            v.extend(o.legs.iter().copied().filter(|l| !self.legs.contains(l)));
            v
        };
        let a = self.extend_legs(&all);
        let b = o.extend_legs(&all);
        let top = all.iter().copied().max().unwrap_or(0) + 1;
        let fresh = |l: Leg| l + top;
        let bt = b.rename(&fresh);
        let mut acc = a.tensor(&bt)?;
        for &l in &all {
            acc = acc.contract(l, fresh(l), l)?;
        }
        Ok(acc)
    }

    /// Left multiplication of `N(e)` on the trivial-Gaussian side.
    pub fn mul_noelem_right(&self, e: &NOElem) -> Result<PGauss> {
        self.mul(&PGauss::from_noelem(self.legs.clone(), e)?)
    }

    pub fn inverse(&self) -> Result<PGauss> {
        let p = self.pert()?;
        let pinv = p.invert_unit()?;
        let winv = self.omega.inv()?;
        let linv = self.lambda.inverse()?;
        // (ω φ(Λ) N(P))⁻¹ = ω⁻¹ N(P)⁻¹ φ(Λ⁻¹)
        let left = PGauss::from_noelem(self.legs.clone(), &pinv)?;
        let g = PGauss::phi(self.legs.clone(), linv, self.order())?;
        Ok(left.mul(&g)?.scale(&winv))
    }

    /// Conjugation `self · e · self⁻¹` of a normal-ordered element.
    pub fn adjoint(&self, e: &NOElem) -> Result<PGauss> {
        let inv = self.inverse()?;
        self.mul(&PGauss::from_noelem(self.legs.clone(), e)?)?.mul(&inv)
    }

    /// When the Gaussian part is trivial, the element as a normal-ordered sum.
    pub fn as_noelem(&self) -> Option<NOElem> {
        self.lambda.is_identity().then(|| self.sym.scale(&self.omega))
    }
}

impl fmt::Display for PGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "legs {:?}; ω = {}; Λ = {}; S = {}", self.legs, self.omega, self.lambda, self.sym)
    }
}

impl fmt::Debug for PGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Drops every `T^k`, `k > n`, from the polynomial coefficients of `e`;
/// coefficients with a genuine denominator are left alone.
pub fn cut_t_degree(e: &NOElem, n: i64) -> NOElem {
    e.map_coeffs(|c| {
        c.map(|r| match r.as_laurent() {
            Some(l) if l.low() >= 0 => RatFuncT::from_laurent(crate::scalar::LaurentT::from_terms(
                l.terms().filter(|&(k, _)| k <= n).map(|(k, v)| (k, v.clone())),
            )),
            _ => r.clone(),
        })
    })
}

/// Whether `a − b` vanishes modulo `T^{n+1}`, coefficientwise.
pub fn agree_mod_t(a: &NOElem, b: &NOElem, n: i64) -> Result<bool> {
    let diff = a - b;
    for (_, c) in diff.terms() {
        for r in c.coeffs() {
            if r.series_at_zero(n)?.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl PGauss {
    /// The explicit series `ω·N(Σ_{k≤n} (xᵀ(Λ−1)p)^k/k! · S)`, cut at `T^n`.
    /// Exact modulo `T^{n+1}` when `Λ − 1 = O(T)`.
    pub fn expansion(&self, n: u32) -> NOElem {
        let d = self.order();
        let mut q = NOElem::zero(d);
        for (r, &a) in self.legs.iter().enumerate() {
            for (c, &b) in self.legs.iter().enumerate() {
                let mut v = self.lambda.get(r, c).clone();
                if r == c {
                    v = &v - &RatFuncT::one();
                }
                if !v.is_zero() {
                    q.add_term(WMono::from_entries([(a, 1, 0), (b, 0, 1)]), &EpsPoly::constant(v, d));
                }
            }
        }
        let mut exp = NOElem::zero(d);
        let mut pw = NOElem::one(d);
        let mut fact = GaussRat::one();
        for k in 0..=n {
            if k > 0 {
                pw = cut_t_degree(&pw.sym_mul(&q), n as i64);
                fact = &fact * &GaussRat::from_int(k as i64);
            }
            exp = &exp + &pw.scale_const(&fact.inv().expect("k! ≠ 0"));
        }
        cut_t_degree(&exp.sym_mul(&self.sym).scale(&self.omega), n as i64)
    }
}
