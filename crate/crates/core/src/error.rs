use thiserror::Error;

/// Errors raised by operator construction and verification.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dim must be ≥ 2 (got {0})")]
    DimTooSmall(usize),

    #[error("dim {dim} exceeds the supported maximum {max}")]
    DimTooLarge { dim: usize, max: usize },

    #[error("dense dimension overflow: {rows}x{cols} exceeds the {max}x{max} limit")]
    DimensionOverflow { rows: usize, cols: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimMismatch { expected: String, found: String },

    #[error("matrix entry count {found} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, found: usize },

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("matrix is not Hermitian (max |h - h†| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("Hermitian eigendecomposition did not converge for a {0}x{0} matrix")]
    EigenFailure(usize),

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("basis mismatch: {left:?} vs {right:?}")]
    BasisMismatch {
        left: crate::BasisTag,
        right: crate::BasisTag,
    },

    #[error("tolerance {0:e} outside (0, 1e-3)")]
    InvalidTolerance(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("convention mismatch in {what}: residual {residual:e} for every sign tried")]
    ConventionMismatch { what: String, residual: f64 },

    #[error("relation {relation} violated: residual {residual:e} > tolerance {tolerance:e}")]
    RelationViolated {
        relation: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("operator basis degenerate: Gram residual {residual:e} > tolerance {tolerance:e}")]
    BasisDegenerate { residual: f64, tolerance: f64 },

    #[error("SUM calibration failed: best worst-case fidelity {best_fidelity} (chi*t = {best_chi_t}, sign {best_sign})")]
    CalibrationFailed {
        best_fidelity: f64,
        best_chi_t: f64,
        best_sign: i32,
    },

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
