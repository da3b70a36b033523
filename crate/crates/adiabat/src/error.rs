use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Eigenvalues do not sum to one within the active tolerance.
    #[error("spectrum is not normalized (sum = {sum})")]
    NotNormalized { sum: String },

    /// A negative eigenvalue beyond the active tolerance.
    #[error("negative eigenvalue {value}")]
    NegativeEigenvalue { value: String },

    /// The ambient dimension is smaller than the support it must carry.
    #[error("ambient dimension {ambient} is smaller than required support {support}")]
    AmbientTooSmall { ambient: String, support: String },

    /// Two spectra live on spaces of different dimension and no explicit
    /// padding was requested.
    #[error("ambient dimensions differ ({left} vs {right}); zero-pad explicitly first")]
    AmbientMismatch { left: String, right: String },

    /// An error tolerance outside its admissible range.
    #[error("epsilon {value} outside admissible range {range}")]
    EpsilonOutOfRange { value: String, range: &'static str },

    /// A run-count cap was exceeded while tensoring.
    #[error("operation would produce {needed} runs, above the cap of {cap}")]
    Overflow { needed: String, cap: usize },

    /// Brute-force oracles only operate on small dimensions.
    #[error("dimension {dim} too large for the brute-force oracle (max {max})")]
    DimensionTooLarge { dim: String, max: usize },

    /// A meter search hit its support cap while the optimum was still moving.
    #[error("meter support cap {cap} too small; optimum attained at the boundary")]
    CapTooSmall { cap: u64 },

    /// A precondition on a formula's domain failed.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
