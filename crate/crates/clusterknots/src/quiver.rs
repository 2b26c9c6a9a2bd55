//! Seeds (vertex set, frozen subset, skew exchange matrix) and their
//! combinatorics: mutation, permutation, amalgamation.

use std::collections::{BTreeSet, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A seed `(I, I₀, ε)`. The exchange matrix is stored doubled so that the
/// half-integer entries allowed between frozen vertices stay exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    vertices: Vec<String>,
    frozen: BTreeSet<usize>,
    eps2: Vec<Vec<i64>>,
}

impl Seed {
    pub fn new(vertices: Vec<String>, frozen: &[&str], eps2: Vec<Vec<i64>>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidSeed(format!("duplicate vertex {v}")));
            }
        }
        let mut fz = BTreeSet::new();
        for f in frozen {
            let i = vertices
                .iter()
                .position(|v| v == f)
                .ok_or_else(|| Error::UnknownVertex(f.to_string()))?;
            fz.insert(i);
        }
        let s = Seed { vertices, frozen: fz, eps2 };
        s.validate(n)?;
        Ok(s)
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.eps2.len() != n || self.eps2.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSeed(format!("exchange matrix is not {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if self.eps2[i][j] != -self.eps2[j][i] {
                    return Err(Error::InvalidSeed(format!("not skew-symmetric at ({i}, {j})")));
                }
                let both_frozen = self.frozen.contains(&i) && self.frozen.contains(&j);
                if self.eps2[i][j] % 2 != 0 && !both_frozen {
                    return Err(Error::InvalidSeed(format!(
                        "half-integer entry between {} and {} which are not both frozen",
                        self.vertices[i], self.vertices[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds a seed on labels `"1"`, …, `"n"` from a list of single arrows
    /// `a → b` (1-based); repeated arrows accumulate.
    pub fn from_arrows(n: usize, frozen: &[usize], arrows: &[(usize, usize)]) -> Result<Self> {
        let mut eps2 = vec![vec![0i64; n]; n];
        for &(a, b) in arrows {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::IndexOutOfRange { index: a.max(b), max: n });
            }
            eps2[a - 1][b - 1] += 2;
            eps2[b - 1][a - 1] -= 2;
        }
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let fl: Vec<String> = frozen.iter().map(|i| i.to_string()).collect();
        let fr: Vec<&str> = fl.iter().map(|s| s.as_str()).collect();
        Seed::new(labels, &fr, eps2)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn label(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == label).ok_or_else(|| Error::UnknownVertex(label.into()))
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen.contains(&i)
    }

    pub fn frozen(&self) -> impl Iterator<Item = usize> + '_ {
        self.frozen.iter().copied()
    }

    /// `2·ε_ij` (0-based indices).
    pub fn eps2(&self, i: usize, j: usize) -> i64 {
        self.eps2[i][j]
    }

    pub fn eps2_matrix(&self) -> &[Vec<i64>] {
        &self.eps2
    }

    /// `ε_ij` for a pair that is not both frozen (always an integer there).
    pub fn eps_int(&self, i: usize, j: usize) -> i64 {
        debug_assert!(self.eps2[i][j] % 2 == 0);
        self.eps2[i][j] / 2
    }

    fn check_mutable(&self, k: usize) -> Result<()> {
        if k >= self.len() {
            return Err(Error::IndexOutOfRange { index: k, max: self.len() });
        }
        if self.is_frozen(k) {
            return Err(Error::FrozenVertex(self.vertices[k].clone()));
        }
        Ok(())
    }

    /// Seed mutation in direction `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        self.check_mutable(k)?;
        let n = self.len();
        let e = &self.eps2;
        let mut out = e.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -e[i][j]
                } else if e[i][k] * e[k][j] > 0 {
                    // 2ε' = 2ε + |2ε_ik|·(2ε_kj)/2; 2ε_ik is even as k is mutable
                    e[i][j] + e[i][k].abs() * e[k][j] / 2
                } else {
                    e[i][j]
                };
            }
        }
        Ok(Seed { vertices: self.vertices.clone(), frozen: self.frozen.clone(), eps2: out })
    }

    pub fn mutate_label(&self, k: &str) -> Result<Seed> {
        self.mutate(self.index_of(k)?)
    }

    /// Relabels by a bijection `σ` on indices: `ε′_ij = ε_{σ(i)σ(j)}`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Seed> {
        let n = self.len();
        if sigma.len() != n {
            return Err(Error::InvalidPermutation(format!("expected {n} entries, got {}", sigma.len())));
        }
        let mut hit = vec![false; n];
        for &s in sigma {
            if s >= n || hit[s] {
                return Err(Error::InvalidPermutation("not a bijection".into()));
            }
            hit[s] = true;
        }
        for i in 0..n {
            if self.is_frozen(i) != self.is_frozen(sigma[i]) {
                return Err(Error::InvalidPermutation(format!(
                    "{} and {} differ in frozenness",
                    self.vertices[i], self.vertices[sigma[i]]
                )));
            }
        }
        let eps2 = (0..n).map(|i| (0..n).map(|j| self.eps2[sigma[i]][sigma[j]]).collect()).collect();
        Ok(Seed { vertices: self.vertices.clone(), frozen: self.frozen.clone(), eps2 })
    }

    /// The transposition `σ_{a,b}` (0-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
        let mut s: Vec<usize> = (0..n).collect();
        s.swap(a, b);
        s
    }

    pub fn swap(&self, a: usize, b: usize) -> Result<Seed> {
        for i in [a, b] {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange { index: i + 1, max: self.len() });
            }
        }
        self.permute(&Seed::transposition(self.len(), a, b))
    }

    /// Renames vertices without changing the combinatorics.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Seed> {
        let fl: Vec<String> = self.frozen.iter().map(|&i| labels[i].clone()).collect();
        let fr: Vec<&str> = fl.iter().map(|s| s.as_str()).collect();
        Seed::new(labels, &fr, self.eps2.clone())
    }

    /// Integral exponent matrix `ε + M` of the cluster ensemble map (M given
    /// doubled, nonzero only between frozen vertices).
    pub fn ensemble_exponents(&self, m2: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        let n = self.len();
        if m2.len() != n || m2.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSeed("ensemble matrix has wrong shape".into()));
        }
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if m2[i][j] != 0 && !(self.is_frozen(i) && self.is_frozen(j)) {
                    return Err(Error::InvalidSeed(format!(
                        "ensemble entry at ({}, {}) outside the frozen block",
                        self.vertices[i], self.vertices[j]
                    )));
                }
                let s = self.eps2[i][j] + m2[i][j];
                if s % 2 != 0 {
                    return Err(Error::InvalidSeed(format!(
                        "ε + M is not integral at ({}, {})",
                        self.vertices[i], self.vertices[j]
                    )));
                }
                out[i][j] = s / 2;
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let frozen: Vec<&str> = self.frozen.iter().map(|&i| self.vertices[i].as_str()).collect();
        json!({ "vertices": self.vertices, "frozen": frozen, "eps2": self.eps2 })
    }

    pub fn from_json(v: &Value) -> Result<Seed> {
        let bad = |m: &str| Error::Parse(format!("seed json: {m}"));
        let strs = |key: &str| -> Result<Vec<String>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("missing array '{key}'")))?
                .iter()
                .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| bad("labels must be strings")))
                .collect()
        };
        let vertices = strs("vertices")?;
        let frozen = strs("frozen")?;
        let eps2 = v
            .get("eps2")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array 'eps2'"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("eps2 rows must be arrays"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| bad("eps2 entries must be integers")))
                    .collect()
            })
            .collect::<Result<Vec<Vec<i64>>>>()?;
        let fr: Vec<&str> = frozen.iter().map(|s| s.as_str()).collect();
        Seed::new(vertices, &fr, eps2)
    }
}

/// Glues `s2` onto `s1` along `glue` (pairs of frozen labels `(v₁, v₂)`),
/// adding arrow labels on identified pairs; the glued vertices keep their
/// `s1` label. Vertices listed in `unfreeze` become mutable.
///
/// The result lists `s1`'s vertices first, then the unglued ones of `s2`.
pub fn amalgamate(s1: &Seed, s2: &Seed, glue: &[(&str, &str)], unfreeze: &[&str]) -> Result<Seed> {
    let mut map2: HashMap<usize, usize> = HashMap::new();
    let mut used1 = BTreeSet::new();
    for &(a, b) in glue {
        let i = s1.index_of(a)?;
        let j = s2.index_of(b)?;
        if !s1.is_frozen(i) || !s2.is_frozen(j) {
            return Err(Error::InvalidAmalgamation(format!("{a} ↦ {b} glues a mutable vertex")));
        }
        if !used1.insert(i) || map2.insert(j, i).is_some() {
            return Err(Error::InvalidAmalgamation("gluing map is not injective".into()));
        }
    }
    let mut vertices = s1.vertices.clone();
    for (j, v) in s2.vertices.iter().enumerate() {
        match map2.get(&j) {
            Some(_) => {}
            None => {
                let idx = vertices.len();
                if vertices.contains(v) {
                    return Err(Error::InvalidAmalgamation(format!("label {v} occurs in both seeds")));
                }
                vertices.push(v.clone());
                map2.insert(j, idx);
            }
        }
    }
    let n = vertices.len();
    let mut eps2 = vec![vec![0i64; n]; n];
    for i in 0..s1.len() {
        for j in 0..s1.len() {
            eps2[i][j] += s1.eps2[i][j];
        }
    }
    for i in 0..s2.len() {
        for j in 0..s2.len() {
            eps2[map2[&i]][map2[&j]] += s2.eps2[i][j];
        }
    }
    let mut frozen: BTreeSet<usize> = s1.frozen.clone();
    frozen.extend(s2.frozen.iter().map(|j| map2[j]));
    for u in unfreeze {
        let i = vertices.iter().position(|v| v == u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
        frozen.remove(&i);
    }
    let s = Seed { vertices, frozen, eps2 };
    s.validate(n)?;
    Ok(s)
}

/// The 4-vertex building block: `a → b → d → c → a` with `a`, `d` frozen.
fn square(labels: [&str; 4]) -> Seed {
    let [a, b, c, d] = labels;
    let idx = |x: &str| labels.iter().position(|&l| l == x).unwrap();
    let mut eps2 = vec![vec![0i64; 4]; 4];
    for (s, t) in [(a, b), (b, d), (d, c), (c, a)] {
        eps2[idx(s)][idx(t)] = 2;
        eps2[idx(t)][idx(s)] = -2;
    }
    Seed::new(labels.iter().map(|s| s.to_string()).collect(), &[a, d], eps2).expect("valid block")
}

/// The D-quiver on `1′ … 4′`.
pub fn d_quiver() -> Seed {
    square(["1'", "2'", "3'", "4'"])
}

/// The E-quiver on `5′ … 8′`.
pub fn e_quiver() -> Seed {
    square(["5'", "6'", "7'", "8'"])
}

/// The 7-vertex Z-quiver obtained by gluing `4′ ↦ 5′`, relabelled `1 … 7`.
pub fn z_quiver() -> Seed {
    let z = amalgamate(&d_quiver(), &e_quiver(), &[("4'", "5'")], &["4'"]).expect("valid gluing");
    z.relabel((1..=7).map(|i| i.to_string()).collect()).expect("fresh labels")
}

/// The `(3n+1)`-vertex quiver of the `n`-punctured disk: for each strand `j`
/// the cycle `3j−2 → 3j−1 → 3j+1 → 3j → 3j−2`; frozen vertices `1`, `3n+1`.
pub fn disk_quiver(n: usize) -> Result<Seed> {
    if n < 1 {
        return Err(Error::InvalidSeed("disk quiver needs at least one puncture".into()));
    }
    let arrows: Vec<(usize, usize)> = (1..=n)
        .flat_map(|j| {
            let (a, b, c, d) = (3 * j - 2, 3 * j - 1, 3 * j + 1, 3 * j);
            [(a, b), (b, c), (c, d), (d, a)]
        })
        .collect();
    Seed::from_arrows(3 * n + 1, &[1, 3 * n + 1], &arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_quiver_is_the_two_strand_disk() {
        assert_eq!(z_quiver().eps2_matrix(), disk_quiver(2).unwrap().eps2_matrix());
        let z = z_quiver();
        let fz: Vec<usize> = z.frozen().collect();
        assert_eq!(fz, vec![0, 6]);
    }

    #[test]
    fn mutation_is_involutive() {
        let s = disk_quiver(3).unwrap();
        for k in 1..9 {
            assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
        }
        assert!(matches!(s.mutate(0), Err(Error::FrozenVertex(_))));
    }
}
