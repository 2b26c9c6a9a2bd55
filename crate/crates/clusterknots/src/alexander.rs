//! Alexander polynomials from braid words, either through the cluster pattern
//! of the Γₙ-specialised disk seed or directly through the Burau matrices.

use num_traits::{One, Zero};

use crate::braid::BraidWord;
use crate::cluster::{cluster_pattern, ClassicalSeed};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::disk_quiver;
use crate::scalar::{GaussRat, LaurentT, MultiRat, RatFuncT};

/// Which route computes the fixed-point matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Via {
    #[default]
    Burau,
    Cluster,
}

/// Γₙ(x₁, …, x_n): the `3n+1` X-variables
/// `(iT⁻¹x₁, −T², −1, −T⁻¹x₁⁻¹x₂, −T², −1, …, i x_n⁻¹)`.
///
/// Variable 0 is `T`, variable `j` is `x_j`.
pub fn gamma(n: usize) -> Result<Vec<MultiRat>> {
    if n < 2 {
        return Err(Error::InvalidBraid("Γ needs at least two strands".into()));
    }
    let t = MultiRat::t();
    let t_inv = t.inv()?;
    let i = MultiRat::constant(GaussRat::i());
    let minus_t2 = -&(&t * &t);
    let minus_one = MultiRat::from_int(-1);
    let x = MultiRat::var;
    let mut out = Vec::with_capacity(3 * n + 1);
    out.push(&(&i * &t_inv) * &x(1));
    for j in 1..=n {
        out.push(minus_t2.clone());
        out.push(minus_one.clone());
        if j < n {
            out.push(-&(&(&t_inv * &x(j).inv()?) * &x(j + 1)));
        }
    }
    out.push(&i * &x(n).inv()?);
    Ok(out)
}

pub fn gamma_seed(n: usize) -> Result<ClassicalSeed> {
    ClassicalSeed::new(disk_quiver(n)?, gamma(n)?)
}

/// `ρ̃ₙ(σ_k^{±1})`: the block `((1−T², T), (T, 0))` (or its inverse) at rows
/// and columns `k, k+1`.
pub fn burau_generator(n: usize, k: usize, sign: i8) -> Matrix {
    let t = RatFuncT::t();
    let one = RatFuncT::one();
    let zero = RatFuncT::zero();
    let (a, b, c, d) = if sign >= 0 {
        (&one - &(&t * &t), t.clone(), t.clone(), zero)
    } else {
        let ti = RatFuncT::t_pow(-1);
        (zero, ti.clone(), ti, &one - &RatFuncT::t_pow(-2))
    };
    let mut m = Matrix::identity(n);
    m.set(k - 1, k - 1, a);
    m.set(k - 1, k, b);
    m.set(k, k - 1, c);
    m.set(k, k, d);
    m
}

/// The linear map the braid induces on Γ-coordinates. Letters act in
/// reading order, so the generator matrices multiply right to left:
/// `ρ̃(σ_{k_m}) ⋯ ρ̃(σ_{k_1})`.
pub fn burau_tilde(word: &BraidWord) -> Matrix {
    let n = word.strands();
    word.letters()
        .iter()
        .fold(Matrix::identity(n), |acc, &(k, s)| &burau_generator(n, k, s) * &acc)
}

fn expect_const(v: &MultiRat, want: &MultiRat, slot: usize) -> Result<()> {
    if v == want {
        Ok(())
    } else {
        Err(Error::NotGammaImage(format!("slot {slot} is {v}, expected {want}")))
    }
}

/// Reads the matrix `M` with `C(β)Γₙ(x) = Γₙ(Mx)` off the last stage of the
/// cluster pattern: slot 1 gives `(Mx)₁`, each slot `3j+1` the quotient
/// `(Mx)_{j+1}/(Mx)_j`, and slot `3n+1` closes the chain.
pub fn pattern_matrix(word: &BraidWord) -> Result<Matrix> {
    let n = word.strands();
    let seed = gamma_seed(n)?;
    let last = cluster_pattern(word, &seed)?.last().clone();
    read_gamma_image(last.xvars(), n)
}

/// Inverts Γₙ on a tuple known to be of the form `Γₙ(Mx)` with `M` linear.
pub fn read_gamma_image(slots: &[MultiRat], n: usize) -> Result<Matrix> {
    let t = MultiRat::t();
    let i = MultiRat::constant(GaussRat::i());
    let minus_t2 = -&(&t * &t);
    let minus_one = MultiRat::from_int(-1);
    let vars: Vec<usize> = (1..=n).collect();
    let mut ys = Vec::with_capacity(n);
    ys.push(slots[0].checked_div(&(&i * &t.inv()?))?);
    for j in 1..=n {
        expect_const(&slots[3 * j - 2], &minus_t2, 3 * j - 1)?;
        expect_const(&slots[3 * j - 1], &minus_one, 3 * j)?;
        if j < n {
            let next = &(&(-&t) * &slots[3 * j]) * &ys[j - 1];
            ys.push(next);
        }
    }
    let close = &slots[3 * n] * &ys[n - 1];
    if close != i {
        return Err(Error::NotGammaImage(format!("slot {} does not close the chain", 3 * n + 1)));
    }
    let rows = ys
        .iter()
        .enumerate()
        .map(|(r, y)| {
            y.as_linear_form(&vars)
                .ok_or_else(|| Error::NotGammaImage(format!("component {} is not linear: {y}", r + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

/// `B(T) = M − I` by the chosen route.
pub fn system_matrix(word: &BraidWord, via: Via) -> Result<Matrix> {
    let m = match via {
        Via::Burau => burau_tilde(word),
        Via::Cluster => pattern_matrix(word)?,
    };
    Ok(&m - &Matrix::identity(word.strands()))
}

/// `det B̂(T)` after deleting row and column `r` (0-based), as a Laurent
/// polynomial in `T`.
pub fn minor_det(b: &Matrix, r: usize) -> Result<LaurentT> {
    let d = b.minor(r, r).det();
    d.as_laurent()
        .cloned()
        .ok_or_else(|| Error::Unrepresentable(format!("minor determinant {d} is not a Laurent polynomial")))
}

/// The raw determinant in `T` (last row and column deleted).
pub fn alexander_raw(word: &BraidWord, via: Via) -> Result<LaurentT> {
    word.check_knot()?;
    let b = system_matrix(word, via)?;
    minor_det(&b, word.strands() - 1)
}

/// Normalises a representative of `Δ(T²)`: strip the unit `±T^k`, read
/// `T² → S`, centre the exponent span and fix `Δ(1) = +1`.
pub fn normalize_in_s(raw: &LaurentT) -> Result<LaurentT> {
    if raw.is_zero() {
        return Err(Error::Unrepresentable("vanishing Alexander determinant".into()));
    }
    let p = raw.shift(-raw.low());
    let s = p
        .compress(2)
        .ok_or_else(|| Error::Unrepresentable(format!("{p} is not a polynomial in T²")))?;
    Ok(symmetrize(&s))
}

/// Centres the exponent span and makes the value at 1 positive.
pub fn symmetrize(p: &LaurentT) -> LaurentT {
    let p = p.shift(-p.low());
    let p = p.shift(-(p.high() / 2));
    let v = p.eval(&GaussRat::one()).expect("no pole at 1");
    if v.re() < &Zero::zero() {
        -p
    } else {
        p
    }
}

/// `Δ_K(S)`, symmetric with `Δ(1) = 1`.
pub fn alexander(word: &BraidWord) -> Result<LaurentT> {
    alexander_via(word, Via::Burau)
}

pub fn alexander_via(word: &BraidWord, via: Via) -> Result<LaurentT> {
    normalize_in_s(&alexander_raw(word, via)?)
}

/// The same polynomial shifted to lowest exponent 0.
pub fn lowest_form(p: &LaurentT) -> LaurentT {
    p.shift(-p.low())
}

/// True when `a = ±T^k·b`.
pub fn equal_up_to_unit(a: &LaurentT, b: &LaurentT) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let a0 = a.shift(-a.low());
    let b0 = b.shift(-b.low());
    a0 == b0 || a0 == -&b0
}
