//! Exact scalar rings: ℚ(i), Laurent polynomials and rational functions in
//! `T`, truncated ε-series, and multivariate rational functions.

mod eps;
mod expr;
mod gauss;
mod laurent;
pub mod mpoly;
mod multirat;
mod ratfunc;

pub use eps::{EpsPoly, EpsSum};
pub use expr::{default_var, parse_expr, parse_in, ExprAlgebra};
pub use gauss::GaussRat;
pub use laurent::LaurentT;
pub use mpoly::{MPoly, Mono};
pub use multirat::{default_name, MultiRat};
pub use ratfunc::{RatFuncT, RatSum};
