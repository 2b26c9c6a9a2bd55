//! Quantum cluster algebras and the perturbed R-matrix.

mod derive;
mod embed;
mod mutation;
mod rep;
mod torus;

pub use derive::{composite_images, derive_perturbed_r, integrate_pair, r0_matrix, PerturbedR};
pub use embed::{sl2_embed, Amalgamation, Sl2Images};
pub use mutation::{z_composite, QSeed};
pub use rep::{dilation, qcoeff_series, rep_eval, rep_eval_noelem, RepContext};
pub use torus::{fmt_qcoeff, q_half, q_pow, Form, QCoeff, TPoly, TorusAlgebra, TorusElem};
