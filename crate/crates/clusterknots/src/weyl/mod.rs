//! The normal-ordered Weyl–Heisenberg algebra: star products, Gaussians
//! `φ(Λ) = N(exp(xᵀ(Λ−1)p))`, perturbed Gaussians and leg contraction.

mod gauss;
mod noelem;

pub use gauss::{agree_mod_t, conj_by_gauss, cut_t_degree, psi_insert, PGauss, Side};
pub use noelem::{rewrite_normal_order, star_mono, Gen, Leg, NOAccum, NOElem, SymbolAlgebra, WMono};
