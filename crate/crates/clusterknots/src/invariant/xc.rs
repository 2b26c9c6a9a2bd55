use std::fmt;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::qcluster::{derive_perturbed_r, dilation};
use crate::scalar::{EpsPoly, GaussRat, RatFuncT};
use crate::weyl::{Leg, PGauss};

/// The XC-structure `(R, κ)` on the one-leg Weyl algebra, truncated at `ε^{d+1}`.
#[derive(Clone, Debug)]
pub struct XCData {
    pub d: usize,
    /// On legs `[1, 2]`, first tensor factor on leg 1.
    pub r: PGauss,
    pub rinv: PGauss,
    /// On leg `[1]`.
    pub kappa: PGauss,
    pub kappainv: PGauss,
}

/// `κ^{±1} = T^{∓1} e^{∓ε} N(exp(xp(e^{∓2ε} − 1)))`, the image of `q^{±H}`.
pub fn kappa_power(sign: i8, d: usize) -> Result<PGauss> {
    let s = sign as i64;
    let omega = EpsPoly::exp_eps(&GaussRat::from_int(-s), d).scale(&RatFuncT::t_pow(-s));
    PGauss::new(vec![1], omega, Matrix::identity(1), &dilation(1, -2 * s, d))
}

pub fn build_xc(d: usize) -> Result<XCData> {
    let r = derive_perturbed_r(d.max(1))?.r.truncate(d);
    let rinv = r.inverse()?;
    Ok(XCData { d, r, rinv, kappa: kappa_power(1, d)?, kappainv: kappa_power(-1, d)? })
}

// internal scratch legs, far above anything a diagram uses
const AUX: Leg = 1 << 20;

impl XCData {
    /// `R^{sign}` with its first factor on `first` and second on `second`.
    pub fn r_on(&self, sign: i8, first: Leg, second: Leg) -> PGauss {
        let g = if sign > 0 { &self.r } else { &self.rinv };
        g.rename(&|l| if l == 1 { first } else { second })
    }

    pub fn kappa_on(&self, sign: i8, leg: Leg) -> PGauss {
        let g = if sign > 0 { &self.kappa } else { &self.kappainv };
        g.rename(&|_| leg)
    }

    pub fn one_on(&self, legs: &[Leg]) -> PGauss {
        PGauss::one(legs.to_vec(), self.d)
    }
}

/// `v = R⁻¹₁₃κ⁻¹₂ ⫽ m_{2,1→1̄} ⫽ m_{3,1̄→i}` for `sign = −1`, and
/// `v⁻¹ = R₁₃κ₂ ⫽ …` for `sign = +1`: a curl with its rotation.
pub fn ribbon(xc: &XCData, leg: Leg, sign: i8) -> Result<PGauss> {
    let (a, b, c) = (AUX + 1, AUX + 2, AUX + 3);
    let z = xc.r_on(sign, a, c).tensor(&xc.kappa_on(sign, b))?;
    z.contract(b, a, AUX)?.contract(c, AUX, leg)
}

/// Outcome of one XC condition.
#[derive(Clone, Debug)]
pub struct AxiomResult {
    pub name: &'static str,
    pub holds: bool,
    /// The first differing coefficient, when the condition fails.
    pub detail: Option<String>,
}

impl fmt::Display for AxiomResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.detail {
            None => write!(f, "{}: {}", self.name, if self.holds { "holds" } else { "fails" }),
            Some(d) => write!(f, "{}: fails ({d})", self.name),
        }
    }
}

/// Where two elements first differ, or `None` when they agree.
pub fn first_difference(a: &PGauss, b: &PGauss) -> Option<String> {
    if a.same_as(b) {
        return None;
    }
    let (a, b) = (a.canonical(), b.canonical());
    if a.legs() != b.legs() {
        return Some(format!("legs {:?} vs {:?}", a.legs(), b.legs()));
    }
    if a.lambda() != b.lambda() {
        return Some(format!("coupling {} vs {}", a.lambda(), b.lambda()));
    }
    let diff = &a.symbol().scale(a.omega()) - &b.symbol().scale(b.omega());
    let (m, c) = diff.terms().next()?;
    let k = c.valuation().unwrap_or(0);
    Some(format!("ε^{k} coefficient of {m} is off by {}", c.coeff(k)))
}

fn check(name: &'static str, lhs: Result<PGauss>, rhs: Result<PGauss>) -> AxiomResult {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let detail = first_difference(&l, &r);
            AxiomResult { name, holds: detail.is_none(), detail }
        }
        (Err(e), _) | (_, Err(e)) => AxiomResult { name, holds: false, detail: Some(e.to_string()) },
    }
}

fn triple(z: PGauss, a: Leg, b: Leg, c: Leg, out: Leg) -> Result<PGauss> {
    z.contract(a, b, AUX)?.contract(AUX, c, out)
}

/// The five XC conditions, each as an exact equality modulo `ε^{d+1}`.
pub fn xc_axioms_check(xc: &XCData) -> Vec<AxiomResult> {
    let mut out = Vec::with_capacity(5);

    let lhs = || -> Result<PGauss> {
        let kk = xc.kappa_on(1, 1).tensor(&xc.kappa_on(1, 2))?;
        let ki = xc.kappa_on(-1, 1).tensor(&xc.kappa_on(-1, 2))?;
        kk.mul(&xc.r)?.mul(&ki)
    };
    out.push(check("(1) R = (κ⊗κ)R(κ⁻¹⊗κ⁻¹)", lhs(), Ok(xc.r.clone())));

    let lhs = || triple(xc.r_on(1, 3, 1).tensor(&xc.kappa_on(1, 2))?, 1, 2, 3, 1);
    let rhs = || triple(xc.r_on(1, 1, 3).tensor(&xc.kappa_on(-1, 2))?, 1, 2, 3, 1);
    out.push(check("(2) μ³(R₃₁κ₂) = μ³(R₁₃κ₂⁻¹)", lhs(), rhs()));

    let lhs = || xc.one_on(&[1]).tensor(&xc.kappa_on(-1, 2));
    let rhs = || -> Result<PGauss> {
        let z = xc.r_on(1, 11, 15).tensor(&xc.r_on(-1, 12, 13))?.tensor(&xc.kappa_on(-1, 14))?;
        triple(z.contract(11, 12, 1)?, 13, 14, 15, 2)
    };
    out.push(check("(3) 1⊗κ⁻¹ = (μ⊗μ³)(R₁₅R₂₃⁻¹κ₄⁻¹)", lhs(), rhs()));

    let lhs = || xc.kappa_on(1, 1).tensor(&xc.one_on(&[2]));
    let rhs = || -> Result<PGauss> {
        let z = xc.r_on(-1, 11, 15).tensor(&xc.r_on(1, 13, 14))?.tensor(&xc.kappa_on(1, 12))?;
        triple(z, 11, 12, 13, 1)?.contract(14, 15, 2)
    };
    out.push(check("(4) κ⊗1 = (μ³⊗μ)(R₁₅⁻¹R₃₄κ₂)", lhs(), rhs()));

    let (r12, r13, r23) = (xc.r_on(1, 1, 2), xc.r_on(1, 1, 3), xc.r_on(1, 2, 3));
    let lhs = || r12.mul(&r13)?.mul(&r23);
    let rhs = || r23.mul(&r13)?.mul(&r12);
    out.push(check("(5) R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂", lhs(), rhs()));
    out
}
