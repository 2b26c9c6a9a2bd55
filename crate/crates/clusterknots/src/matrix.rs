//! Small dense matrices over ℚ(i)(T).

use std::fmt;
use std::ops::{Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::RatFuncT;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    m: usize,
    a: Vec<Vec<RatFuncT>>,
}

impl Matrix {
    pub fn zero(n: usize, m: usize) -> Self {
        Matrix { n, m, a: vec![vec![RatFuncT::zero(); m]; n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RatFuncT::one() } else { RatFuncT::zero() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> RatFuncT>(n: usize, m: usize, mut f: F) -> Self {
        Matrix { n, m, a: (0..n).map(|i| (0..m).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn from_rows(rows: Vec<Vec<RatFuncT>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Matrix { n, m, a: rows }
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn is_square(&self) -> bool {
        self.n == self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFuncT {
        &self.a[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFuncT) {
        self.a[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFuncT] {
        &self.a[i]
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.m, self.n, |i, j| self.a[j][i].clone())
    }

    /// Deletes row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Matrix {
        let rows = (0..self.n)
            .filter(|&i| i != r)
            .map(|i| (0..self.m).filter(|&j| j != c).map(|j| self.a[i][j].clone()).collect())
            .collect();
        Matrix { n: self.n - 1, m: self.m - 1, a: rows }
    }

    /// Upper-left `k×k` block.
    pub fn leading_block(&self, k: usize) -> Matrix {
        Matrix::from_fn(k, k, |i, j| self.a[i][j].clone())
    }

    pub fn map<F: Fn(&RatFuncT) -> RatFuncT>(&self, f: F) -> Matrix {
        Matrix { n: self.n, m: self.m, a: self.a.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn det(&self) -> RatFuncT {
        assert!(self.is_square());
        let mut a = self.a.clone();
        let n = self.n;
        let mut det = RatFuncT::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return RatFuncT::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv().expect("nonzero pivot");
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        assert!(self.is_square());
        let n = self.n;
        let mut a = self.a.clone();
        let mut b = Matrix::identity(n).a;
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::Singular)?;
            a.swap(p, c);
            b.swap(p, c);
            let inv = a[c][c].inv()?;
            for k in 0..n {
                a[c][k] = &a[c][k] * &inv;
                b[c][k] = &b[c][k] * &inv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] = &a[r][k] - &t;
                    let t = &f * &b[c][k];
                    b[r][k] = &b[r][k] - &t;
                }
            }
        }
        Ok(Matrix { n, m: n, a: b })
    }

    /// Block-diagonal sum `self ⊕ o`.
    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        Matrix::from_fn(self.n + o.n, self.m + o.m, |i, j| {
            if i < self.n && j < self.m {
                self.a[i][j].clone()
            } else if i >= self.n && j >= self.m {
                o.a[i - self.n][j - self.m].clone()
            } else {
                RatFuncT::zero()
            }
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .a
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        assert_eq!(self.m, o.n, "shape mismatch");
        Matrix::from_fn(self.n, o.m, |i, j| {
            let mut acc = RatFuncT::zero();
            for k in 0..self.m {
                if !self.a[i][k].is_zero() && !o.a[k][j].is_zero() {
                    acc = &acc + &(&self.a[i][k] * &o.a[k][j]);
                }
            }
            acc
        })
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert!(self.n == o.n && self.m == o.m, "shape mismatch");
        Matrix::from_fn(self.n, self.m, |i, j| &self.a[i][j] - &o.a[i][j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::LaurentT;

    #[test]
    fn inverse_and_det() {
        let t = RatFuncT::t();
        let m = Matrix::from_rows(vec![
            vec![&RatFuncT::one() - &(&t * &t), t.clone()],
            vec![t.clone(), RatFuncT::zero()],
        ]);
        assert_eq!(m.det(), RatFuncT::from_laurent(LaurentT::monomial((-1).into(), 2)));
        assert!((&m * &m.inverse().unwrap()).is_identity());
    }
}
