use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A braid word `σ_{k₁}^{±1} ⋯ σ_{k_m}^{±1}` in `B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        if strands < 1 {
            return Err(Error::InvalidBraid("need at least one strand".into()));
        }
        for &(k, s) in &letters {
            if k == 0 || k >= strands {
                return Err(Error::InvalidBraid(format!("generator {k} not in 1..{}", strands - 1)));
            }
            if s != 1 && s != -1 {
                return Err(Error::InvalidBraid(format!("exponent {s} is not ±1")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// From signed generator indices, e.g. `[1, -2, 1, -2]`.
    pub fn from_signed(strands: usize, word: &[i64]) -> Result<Self> {
        let letters = word
            .iter()
            .map(|&g| {
                if g == 0 {
                    Err(Error::InvalidBraid("generator index 0".into()))
                } else {
                    Ok((g.unsigned_abs() as usize, g.signum() as i8))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    /// Parses whitespace- or comma-separated signed integers; the strand
    /// count defaults to `max|k| + 1`.
    pub fn parse(s: &str, strands: Option<usize>) -> Result<Self> {
        let word = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad braid letter '{t}'"))))
            .collect::<Result<Vec<i64>>>()?;
        let n = strands.unwrap_or_else(|| word.iter().map(|g| g.unsigned_abs() as usize).max().unwrap_or(1) + 1);
        Self::from_signed(n, &word).map_err(|e| match e {
            Error::InvalidBraid(m) => Error::Parse(m),
            e => e,
        })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| s as i64).sum()
    }

    /// The underlying permutation: `perm[p]` is the end position of the
    /// strand starting at position `p` (0-based), reading letters left to right.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &(k, _) in &self.letters {
            for p in at.iter_mut() {
                if *p == k - 1 {
                    *p = k;
                } else if *p == k {
                    *p = k - 1;
                }
            }
        }
        at
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut c = 0;
        for s in 0..self.strands {
            if !seen[s] {
                c += 1;
                let mut p = s;
                while !seen[p] {
                    seen[p] = true;
                    p = perm[p];
                }
            }
        }
        c
    }

    pub fn check_knot(&self) -> Result<()> {
        match self.components() {
            1 => Ok(()),
            c => Err(Error::NotAKnot(c)),
        }
    }

    /// Markov stabilisation `β ↦ β·σ_n^{sign}` in `B_{n+1}`.
    pub fn stabilize(&self, sign: i8) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.push((self.strands, sign));
        BraidWord { strands: self.strands + 1, letters }
    }

    /// The mirror image (all exponents flipped).
    pub fn mirror(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|&(k, s)| (k, -s)).collect() }
    }

    pub fn reversed(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().copied().collect() }
    }

    /// Signed generator indices.
    pub fn signed(&self) -> Vec<i64> {
        self.letters.iter().map(|&(k, s)| k as i64 * s as i64).collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signed().iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}
