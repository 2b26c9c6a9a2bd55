use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at substitution point")]
    Pole,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vertex {0} is frozen")]
    FrozenVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid amalgamation: {0}")]
    InvalidAmalgamation(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid braid word: {0}")]
    InvalidBraid(String),
    #[error("braid closure is a link with {0} components, not a knot")]
    NotAKnot(usize),
    #[error("final stage is not of Gamma-image form: {0}")]
    NotGammaImage(String),
    #[error("leg mismatch: {0}")]
    LegMismatch(String),
    #[error("singular coupling matrix")]
    Singular,
    #[error("singular Gaussian contraction (1 - coupling vanishes)")]
    SingularContraction,
    #[error("element is not invertible: {0}")]
    NonInvertible(String),
    #[error("not representable: {0}")]
    Unrepresentable(String),
    #[error("inconsistent mixed partials in the integration step")]
    InconsistentPartials,
    #[error("truncation order mismatch")]
    OrderMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
