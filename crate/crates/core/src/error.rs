use thiserror::Error;

/// Errors raised by the evaluation, reduction and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("{what} did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("singular geometry: R(x) = c + a cos x vanishes at x = {x}")]
    SingularGeometry { x: f64 },

    #[error("Fermi velocity must be positive, got {value} at x = {x}")]
    InvalidVelocity { x: f64, value: f64 },

    #[error("k = 0 makes the reduced potential vanish identically; only a zero target is representable")]
    DegenerateMode,

    #[error("transform slope left (0, inf) at x = {x}")]
    BlowUp { x: f64 },

    #[error("index {index} out of range for grid of {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("cancellation conditions are inconsistent: {0}")]
    InconsistentConditions(String),

    #[error("level n = {n} has negative eigenvalue {eps}")]
    OutOfRange { n: usize, eps: f64 },

    #[error("grid too coarse: {points} points, need at least {required}")]
    GridTooCoarse { points: usize, required: usize },

    #[error("potential is not finite at interior node {index} (x = {x})")]
    NonFinitePotential { index: usize, x: f64 },

    #[error("eigenvalue iteration did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("oracle input rejected: {0}")]
    IllPosed(String),

    #[error("L2 normalization failed: {0}")]
    NormalizationFailure(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
