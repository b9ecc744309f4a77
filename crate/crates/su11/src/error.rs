//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Su11Error {
    #[error("invalid representation label: {0}")]
    InvalidRep(String),

    #[error("representation mismatch: k = {k_a} (dim {dim_a}) vs k = {k_b} (dim {dim_b})")]
    RepMismatch {
        k_a: f64,
        dim_a: usize,
        k_b: f64,
        dim_b: usize,
    },

    #[error("coefficient vector has length {got}, representation needs {want}")]
    LengthMismatch { got: usize, want: usize },

    #[error("mu = 0 leaves |nu/mu| undefined")]
    DegenerateMu,

    #[error("|nu/mu| = {ratio} >= 1: no normalizable ladder eigenstate")]
    NuRatioTooLarge { ratio: f64 },

    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),

    #[error("|alpha| = {alpha} exceeds the displacement guard {guard}")]
    AlphaOutOfRange { alpha: f64, guard: f64 },

    #[error("cut-off degree M = {m} does not fit in dimension {dim}")]
    CutoffTooLarge { m: usize, dim: usize },

    #[error("state is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("factorial bracket overflowed even in log domain")]
    BracketOverflow,

    #[error("invalid Calogero-Sutherland parameters: {0}")]
    InvalidCsParams(String),

    #[error("singular parameter: {0}")]
    SingularParameter(String),

    #[error("energy {energy} is below the potential minimum {minimum}")]
    EnergyBelowMinimum { energy: f64, minimum: f64 },

    #[error("polynomial-times-gaussian fit residual {residual} exceeds tolerance {tolerance}")]
    FitResidual { residual: f64, tolerance: f64 },

    #[error("ratio sequence tail is not monotone at index {index}")]
    NonMonotoneTail { index: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Su11Error>;
