//! Golden values transcribed from printed displays, compiled in so the
//! self-test runs from any working directory.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};

pub const R_OPERATOR: &str = include_str!("../../fixtures/r_operator.json");
pub const TREFOIL: &str = include_str!("../../fixtures/trefoil_pattern.json");
pub const FIGURE_EIGHT: &str = include_str!("../../fixtures/figure_eight_pattern.json");
pub const QUANTUM_MUTATION: &str = include_str!("../../fixtures/quantum_mutation.json");
pub const PERTURBED_R: &str = include_str!("../../fixtures/perturbed_r.json");

/// A printed value known to be misprinted, with the value that is
/// reproduced instead and why.
#[derive(Clone, Debug, Deserialize)]
pub struct Misprint {
    pub corrected: String,
    pub reason: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct QuiverSpec {
    pub vertices: usize,
    pub frozen: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ROperatorFixture {
    pub location: String,
    pub quiver: QuiverSpec,
    pub steps: String,
    pub r_a: Vec<String>,
    pub r_x: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TrefoilFixture {
    pub location: String,
    pub braid: String,
    pub x1: Vec<String>,
    pub x4_printed: Vec<String>,
    /// Keyed by 1-based slot.
    pub misprints: BTreeMap<usize, Misprint>,
    pub fixed_point_matrix: Vec<Vec<String>>,
    pub system_matrix: Vec<Vec<String>>,
    pub delta_of_t_squared: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FigureEightFixture {
    pub location: String,
    pub braid: String,
    pub y1: Vec<String>,
    pub y5_printed: Vec<String>,
    pub system_matrix: Vec<Vec<String>>,
    pub upper_left_det: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct QuantumMutationFixture {
    pub location: String,
    pub composite: String,
    pub x1_image: String,
    pub x7_image_printed: String,
    pub misprints: BTreeMap<String, Misprint>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PerturbedRFixture {
    pub location: String,
    pub r0_conjugation: BTreeMap<String, String>,
    pub f_terms_printed: Vec<String>,
    /// Keyed by 0-based term index.
    pub misprints: BTreeMap<usize, Misprint>,
}

fn load<T: for<'de> Deserialize<'de>>(name: &str, src: &str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| Error::Parse(format!("fixture {name}: {e}")))
}

pub fn r_operator() -> Result<ROperatorFixture> {
    load("r_operator", R_OPERATOR)
}

pub fn trefoil() -> Result<TrefoilFixture> {
    load("trefoil_pattern", TREFOIL)
}

pub fn figure_eight() -> Result<FigureEightFixture> {
    load("figure_eight_pattern", FIGURE_EIGHT)
}

pub fn quantum_mutation() -> Result<QuantumMutationFixture> {
    load("quantum_mutation", QUANTUM_MUTATION)
}

pub fn perturbed_r() -> Result<PerturbedRFixture> {
    load("perturbed_r", PERTURBED_R)
}
