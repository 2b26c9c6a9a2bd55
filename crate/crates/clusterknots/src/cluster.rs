//! Classical cluster A- and X-dynamics on commutative rational functions.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::quiver::Seed;
use crate::scalar::MultiRat;

/// A quiver together with its cluster X-variables and, optionally, its
/// A-variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalSeed {
    quiver: Seed,
    avars: Option<Vec<MultiRat>>,
    xvars: Vec<MultiRat>,
}

impl ClassicalSeed {
    pub fn new(quiver: Seed, xvars: Vec<MultiRat>) -> Result<Self> {
        if xvars.len() != quiver.len() {
            return Err(Error::InvalidSeed(format!("{} X-variables for {} vertices", xvars.len(), quiver.len())));
        }
        if xvars.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidSeed("cluster variables must be nonzero".into()));
        }
        Ok(ClassicalSeed { quiver, avars: None, xvars })
    }

    /// Tracks A-variables too.
    pub fn with_avars(mut self, avars: Vec<MultiRat>) -> Result<Self> {
        if avars.len() != self.quiver.len() || avars.iter().any(|a| a.is_zero()) {
            return Err(Error::InvalidSeed("A-variables must be nonzero, one per vertex".into()));
        }
        self.avars = Some(avars);
        Ok(self)
    }

    /// `X_i` (and `A_i` if `track_a`) set to the free variable `i` (1-based,
    /// variable 0 is reserved for `T`).
    pub fn generic(quiver: Seed, track_a: bool) -> Self {
        let vars: Vec<MultiRat> = (1..=quiver.len()).map(MultiRat::var).collect();
        let avars = track_a.then(|| vars.clone());
        ClassicalSeed { quiver, avars, xvars: vars }
    }

    pub fn quiver(&self) -> &Seed {
        &self.quiver
    }

    pub fn xvars(&self) -> &[MultiRat] {
        &self.xvars
    }

    pub fn avars(&self) -> Option<&[MultiRat]> {
        self.avars.as_deref()
    }

    /// Mutation at `k` (0-based) of the quiver and all tracked variables.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let quiver = self.quiver.mutate(k)?;
        let xvars = mutate_x(&self.quiver, &self.xvars, k)?;
        let avars = match &self.avars {
            Some(a) => Some(mutate_a(&self.quiver, a, k)?),
            None => None,
        };
        Ok(ClassicalSeed { quiver, avars, xvars })
    }

    /// Permutes quiver and variables: slot `i` receives slot `σ(i)`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Self> {
        let quiver = self.quiver.permute(sigma)?;
        let xvars = sigma.iter().map(|&s| self.xvars[s].clone()).collect();
        let avars = self.avars.as_ref().map(|a| sigma.iter().map(|&s| a[s].clone()).collect());
        Ok(ClassicalSeed { quiver, avars, xvars })
    }

    pub fn swap(&self, a: usize, b: usize) -> Result<Self> {
        for i in [a, b] {
            if i >= self.quiver.len() {
                return Err(Error::IndexOutOfRange { index: i + 1, max: self.quiver.len() });
            }
        }
        self.permute(&Seed::transposition(self.quiver.len(), a, b))
    }

    /// Applies `steps` (1-based) in order.
    pub fn apply_steps(&self, steps: &[Step]) -> Result<Self> {
        steps.iter().try_fold(self.clone(), |s, st| match *st {
            Step::Mutate(k) => s.mutate(k - 1),
            Step::Swap(a, b) => s.swap(a - 1, b - 1),
        })
    }

    /// `Ř_i^{sign}` on a `(3n+1)`-vertex disk seed, `1 ≤ i ≤ n−1`.
    pub fn r_operator(&self, i: usize, sign: i8) -> Result<Self> {
        let n = (self.quiver.len().saturating_sub(1)) / 3;
        if self.quiver.len() != 3 * n + 1 || n < 2 {
            return Err(Error::InvalidSeed("R-operator needs a (3n+1)-vertex disk seed, n ≥ 2".into()));
        }
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, max: n - 1 });
        }
        let mut s = self.clone();
        let steps = r_steps(i);
        let apply = |s: &ClassicalSeed, st: &Step| match *st {
            Step::Mutate(k) => s.mutate(k - 1),
            Step::Swap(a, b) => s.swap(a - 1, b - 1),
        };
        if sign >= 0 {
            for st in &steps {
                s = apply(&s, st)?;
            }
        } else {
            for st in steps.iter().rev() {
                s = apply(&s, st)?;
            }
        }
        Ok(s)
    }
}

/// One step of an R-operator composite (1-based vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Mutate(usize),
    Swap(usize, usize),
}

/// Reads a composite such as `s35 s25 m4 m2`, written right to left, into
/// application order. A swap names two one-digit vertices or separates them
/// with a comma (`s3,12`).
pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
    let mut out = s
        .split_whitespace()
        .map(|w| {
            let bad = || Error::Parse(format!("bad step {w:?}"));
            let num = |t: &str| t.parse::<usize>().ok().filter(|&k| k > 0).ok_or_else(bad);
            if let Some(k) = w.strip_prefix('m') {
                return Ok(Step::Mutate(num(k)?));
            }
            let ab = w.strip_prefix('s').ok_or_else(bad)?;
            let (a, b) = match ab.split_once(',') {
                Some(p) => p,
                None if ab.len() == 2 && ab.is_char_boundary(1) => ab.split_at(1),
                None => return Err(bad()),
            };
            Ok(Step::Swap(num(a)?, num(b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    out.reverse();
    Ok(out)
}

/// `Ř_i = σ_{3i,3i+2} σ_{3i−1,3i+2} σ_{3i,3i+3} μ_{3i+1} μ_{3i−1} μ_{3i+3} μ_{3i+1}`,
/// in application order (rightmost first). Every step is an involution, so
/// the inverse is the reversed list.
pub fn r_steps(i: usize) -> Vec<Step> {
    use Step::*;
    vec![
        Mutate(3 * i + 1),
        Mutate(3 * i + 3),
        Mutate(3 * i - 1),
        Mutate(3 * i + 1),
        Swap(3 * i, 3 * i + 3),
        Swap(3 * i - 1, 3 * i + 2),
        Swap(3 * i, 3 * i + 2),
    ]
}

/// `X_k ↦ X_k⁻¹`, `X_i ↦ X_i (1 + X_k^{−sgn ε_ki})^{−ε_ki}`.
pub fn mutate_x(q: &Seed, x: &[MultiRat], k: usize) -> Result<Vec<MultiRat>> {
    if q.is_frozen(k) {
        return Err(Error::FrozenVertex(q.label(k).into()));
    }
    let xk_inv = x[k].inv()?;
    let one = MultiRat::one();
    let plus = &one + &x[k];
    let minus = &one + &xk_inv;
    x.iter()
        .enumerate()
        .map(|(i, xi)| {
            if i == k {
                return Ok(xk_inv.clone());
            }
            let e = q.eps_int(k, i);
            Ok(match e.signum() {
                0 => xi.clone(),
                // ε_ki > 0: (1 + X_k⁻¹)^{−ε_ki}
                1 => xi * &minus.pow(-e)?,
                _ => xi * &plus.pow(-e)?,
            })
        })
        .collect()
}

/// `A_k ↦ A_k⁻¹ (∏_{ε_ki>0} A_i^{ε_ki} + ∏_{ε_ki<0} A_i^{−ε_ki})`.
pub fn mutate_a(q: &Seed, a: &[MultiRat], k: usize) -> Result<Vec<MultiRat>> {
    if q.is_frozen(k) {
        return Err(Error::FrozenVertex(q.label(k).into()));
    }
    let mut pos = MultiRat::one();
    let mut neg = MultiRat::one();
    for (i, ai) in a.iter().enumerate() {
        let e = q.eps_int(k, i);
        if e > 0 {
            pos = &pos * &ai.pow(e)?;
        } else if e < 0 {
            neg = &neg * &ai.pow(-e)?;
        }
    }
    let new = (&pos + &neg).checked_div(&a[k])?;
    let mut out = a.to_vec();
    out[k] = new;
    Ok(out)
}

/// The sequence of seeds `x[1], …, x[m+1]` driven by a braid word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPattern {
    pub stages: Vec<ClassicalSeed>,
}

impl ClusterPattern {
    pub fn last(&self) -> &ClassicalSeed {
        self.stages.last().expect("a pattern has at least one stage")
    }
}

pub fn cluster_pattern(word: &BraidWord, initial: &ClassicalSeed) -> Result<ClusterPattern> {
    let n = word.strands();
    if initial.quiver().len() != 3 * n + 1 {
        return Err(Error::InvalidBraid(format!(
            "{}-strand word needs a {}-vertex seed, got {}",
            n,
            3 * n + 1,
            initial.quiver().len()
        )));
    }
    let mut stages = vec![initial.clone()];
    for &(k, s) in word.letters() {
        let next = stages.last().unwrap().r_operator(k, s)?;
        stages.push(next);
    }
    Ok(ClusterPattern { stages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::disk_quiver;

    #[test]
    fn r_operator_restores_quiver() {
        let s = ClassicalSeed::generic(disk_quiver(2).unwrap(), false);
        let r = s.r_operator(1, 1).unwrap();
        assert_eq!(r.quiver(), s.quiver());
        assert_eq!(r.r_operator(1, -1).unwrap(), s);
    }

    #[test]
    fn r_x_first_slot() {
        let s = ClassicalSeed::generic(disk_quiver(2).unwrap(), false);
        let r = s.r_operator(1, 1).unwrap();
        let x = |i| MultiRat::var(i);
        let one = MultiRat::one();
        let expect = &x(1) * &(&(&one + &x(2)) + &(&x(2) * &x(4)));
        assert_eq!(r.xvars()[0], expect);
    }
}
