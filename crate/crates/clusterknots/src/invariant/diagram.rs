use std::collections::BTreeSet;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::weyl::Leg;

/// A labelled bead on the long knot. Legs are traversal positions `1..=N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bead {
    /// `R^{sign}` with the first tensor factor on the over-strand pass.
    Crossing { sign: i8, over: Leg, under: Leg },
    /// `κ^{sign}` for a closure arc.
    Kappa { leg: Leg, sign: i8 },
    /// The framing-correcting curl `v^{∓1}`; `sign = −1` is built from `R⁻¹`.
    Ribbon { leg: Leg, sign: i8 },
}

impl Bead {
    pub fn legs(&self) -> Vec<Leg> {
        match *self {
            Bead::Crossing { over, under, .. } => vec![over, under],
            Bead::Kappa { leg, .. } | Bead::Ribbon { leg, .. } => vec![leg],
        }
    }
}

/// Beads along a traversal plus the schedule `m_{i,j→k}` that multiplies
/// them together, later labels to the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongKnotDiagram {
    pub legs: Vec<Leg>,
    pub beads: Vec<Bead>,
    pub schedule: Vec<(Leg, Leg, Leg)>,
    pub open: Leg,
}

/// Label of the running product.
pub const ACC: Leg = 0;

/// Opens the closure of `word` at the bottom of the first strand and walks
/// upward. A positive crossing puts its strand moving right on top; each
/// closure arc except the open one carries `κ`; writhe `w` is cancelled by
/// `|w|` ribbon beads of sign `−sgn w`.
pub fn diagram_from_braid(word: &BraidWord) -> Result<LongKnotDiagram> {
    word.check_knot()?;
    let m = word.len();
    let mut beads = Vec::new();
    // first pass through each crossing: (label, moving right)
    let mut seen: Vec<Option<(Leg, bool)>> = vec![None; m];
    let mut label: Leg = 0;
    let mut p = 0usize;
    loop {
        for (t, &(k, sign)) in word.letters().iter().enumerate() {
            let right = p + 1 == k;
            if !right && p != k {
                continue;
            }
            label += 1;
            p = if right { k } else { k - 1 };
            match seen[t] {
                None => seen[t] = Some((label, right)),
                Some((first, first_right)) => {
                    // the strand moving right is over at σ⁺ and under at σ⁻
                    let first_over = first_right == (sign > 0);
                    let (over, under) = if first_over { (first, label) } else { (label, first) };
                    beads.push(Bead::Crossing { sign, over, under });
                }
            }
        }
        if p == 0 {
            break;
        }
        label += 1;
        beads.push(Bead::Kappa { leg: label, sign: 1 });
    }
    let w = word.writhe();
    for _ in 0..w.unsigned_abs() {
        label += 1;
        beads.push(Bead::Ribbon { leg: label, sign: if w > 0 { -1 } else { 1 } });
    }
    let legs: Vec<Leg> = (1..=label).collect();
    let schedule = match label {
        0 | 1 => Vec::new(),
        _ => std::iter::once((2, 1, ACC)).chain((3..=label).map(|l| (l, ACC, ACC))).collect(),
    };
    let open = if label <= 1 { 1 } else { ACC };
    let diag = LongKnotDiagram { legs, beads, schedule, open };
    diag.validate()?;
    Ok(diag)
}

impl LongKnotDiagram {
    /// Every leg carries one bead, and the schedule merges all of them into
    /// the open leg, using each exactly once.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidBraid(format!("invalid bead diagram: {m}")));
        let mut carried = BTreeSet::new();
        for b in &self.beads {
            for l in b.legs() {
                if !carried.insert(l) {
                    return bad(&format!("leg {l} carries two beads"));
                }
            }
        }
        if carried != self.legs.iter().copied().collect() {
            return bad("beads and legs disagree");
        }
        let mut live: BTreeSet<Leg> = carried;
        for &(i, j, k) in &self.schedule {
            if i == j || !live.remove(&i) || !live.remove(&j) || !live.insert(k) {
                return bad(&format!("step m_{{{i},{j}→{k}}}"));
            }
        }
        if self.legs.is_empty() {
            return Ok(());
        }
        if live.len() != 1 || !live.contains(&self.open) {
            return bad("schedule does not end on the open leg");
        }
        Ok(())
    }
}
