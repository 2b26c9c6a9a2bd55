use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{EpsPoly, LaurentT, RatFuncT};
use crate::weyl::{Leg, NOElem, PGauss};

use super::diagram::{Bead, LongKnotDiagram};
use super::xc::{ribbon, XCData};

/// `Z = ω·φ(Λ)·N(P)` on the single open leg, relabelled as leg 1.
#[derive(Clone, Debug)]
pub struct InvariantResult {
    pub z: PGauss,
    pub omega: EpsPoly,
    pub lambda: Matrix,
    pub pert: NOElem,
}

impl InvariantResult {
    fn from_gauss(z: PGauss) -> Result<Self> {
        let z = z.canonical();
        let pert = z.pert()?;
        Ok(InvariantResult { omega: z.omega().clone(), lambda: z.lambda().clone(), pert, z })
    }

    pub fn order(&self) -> usize {
        self.omega.order()
    }

    /// Equality of the full invariant to all computed orders.
    pub fn same_as(&self, o: &InvariantResult) -> bool {
        self.z.same_as(&o.z)
    }
}

fn bead_value(b: &Bead, xc: &XCData, ribbons: &mut BTreeMap<i8, PGauss>) -> Result<PGauss> {
    Ok(match *b {
        Bead::Crossing { sign, over, under } => xc.r_on(sign, over, under),
        Bead::Kappa { leg, sign } => xc.kappa_on(sign, leg),
        Bead::Ribbon { leg, sign } => {
            let v = match ribbons.entry(sign) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(ribbon(xc, 1, sign)?),
            };
            v.rename(&|_| leg)
        }
    })
}

/// Runs the contraction schedule, pulling each bead in only when one of
/// its legs is first needed so the live leg set stays small.
pub fn universal_invariant(diag: &LongKnotDiagram, xc: &XCData) -> Result<InvariantResult> {
    diag.validate()?;
    let mut ribbons = BTreeMap::new();
    let owner: BTreeMap<Leg, usize> =
        diag.beads.iter().enumerate().flat_map(|(n, b)| b.legs().into_iter().map(move |l| (l, n))).collect();
    let mut used = BTreeSet::new();
    let mut acc: Option<PGauss> = None;
    let mut pull = |l: Leg, acc: &mut Option<PGauss>| -> Result<()> {
        let Some(&n) = owner.get(&l) else { return Ok(()) };
        if !used.insert(n) {
            return Ok(());
        }
        let v = bead_value(&diag.beads[n], xc, &mut ribbons)?;
        *acc = Some(match acc.take() {
            None => v,
            Some(a) => a.tensor(&v)?,
        });
        Ok(())
    };
    for &(i, j, k) in &diag.schedule {
        pull(i, &mut acc)?;
        pull(j, &mut acc)?;
        acc = Some(acc.take().expect("pulled").contract(i, j, k)?);
    }
    for &l in &diag.legs {
        pull(l, &mut acc)?;
    }
    let z = match acc {
        None => PGauss::one(vec![1], xc.d),
        Some(z) if z.legs() == [diag.open] => z.rename(&|_| 1),
        Some(z) => return Err(Error::LegMismatch(format!("schedule left legs {:?}", z.legs()))),
    };
    InvariantResult::from_gauss(z)
}

/// Which reading of `Δ` makes `ω₀·Δ` a unit `±T^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlexanderConvention {
    /// `Δ(T)`
    T,
    /// `Δ(T²)`
    TSquared,
}

/// Tests `ω₀·Δ(T)` and `ω₀·Δ(T²)` for being units, `T` first.
pub fn zeroth_order_check(res: &InvariantResult, delta: &LaurentT) -> Option<AlexanderConvention> {
    let w0 = res.omega.coeff(0);
    for (conv, k) in [(AlexanderConvention::T, 1), (AlexanderConvention::TSquared, 2)] {
        let Ok(dk) = delta.subs_pow(k) else { continue };
        if (w0 * &RatFuncT::from_laurent(dk)).is_signed_power() {
            return Some(conv);
        }
    }
    None
}

/// The ε-graded data in a stable form: `ω` per order, `Λ`, and the open-leg
/// perturbation coefficients per order keyed by monomial.
pub fn perturbed_report(res: &InvariantResult, delta: Option<&LaurentT>) -> Value {
    let d = res.order();
    let omega: Map<String, Value> =
        (0..=d).map(|k| (k.to_string(), Value::String(res.omega.coeff(k).to_string()))).collect();
    let mut pert = Map::new();
    for k in 0..=d {
        let mut terms = Map::new();
        for (m, c) in res.pert.terms() {
            let ck = c.coeff(k);
            if !ck.is_zero() {
                terms.insert(m.to_string(), Value::String(ck.to_string()));
            }
        }
        pert.insert(k.to_string(), Value::Object(terms));
    }
    let mut out = json!({
        "order": d,
        "omega": omega,
        "lambda": res.lambda.get(0, 0).to_string(),
        "perturbation": pert,
    });
    if let Some(delta) = delta {
        let (verdict, conv) = match zeroth_order_check(res, delta) {
            Some(AlexanderConvention::T) => ("unit", "T"),
            Some(AlexanderConvention::TSquared) => ("unit", "T^2"),
            None => ("mismatch", "none"),
        };
        out["alexander_check"] = json!(verdict);
        out["alexander_convention"] = json!(conv);
    }
    out
}
