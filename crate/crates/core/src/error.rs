use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix data malformed at index {index}: {reason}")]
    MalformedData { index: usize, reason: String },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("Hermitian eigensolver failed (reconstruction residual {residual:e})")]
    EigenFailure { residual: f64 },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("scalar function returned {value} at eigenvalue {eigenvalue}")]
    FunctionEvaluation { eigenvalue: f64, value: f64 },

    #[error("quadrature did not converge with {nodes} nodes (last two iterates differ by {distance:e})")]
    QuadratureNotConverged { nodes: usize, distance: f64 },

    #[error("check `{check}` produced a non-finite value for `{label}`")]
    NonFiniteTerm { check: String, label: String },

    #[error("invalid scalar function: {0}")]
    InvalidFunction(String),

    #[error("inverse bracket for target {target} exceeded 1e30; function bounded above?")]
    InverseDivergence { target: f64 },

    #[error("invalid interval [{a}, {b}]: need a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("operator tuple is empty")]
    EmptyTuple,

    #[error("invalid optimizer budget: {0}")]
    InvalidBudget(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("check `{check}` expects {expected}, got {found} matrices")]
    Arity {
        check: String,
        expected: String,
        found: usize,
    },

    #[error("hypothesis of `{check}` not met: {reason}")]
    Hypothesis { check: String, reason: String },

    #[error("parameter `{name}` = {value} outside admissible range {range}")]
    InvalidParameter { name: String, value: f64, range: String },

    #[error("incompatible bounds: {0}")]
    IncompatibleBounds(String),

    #[error("unknown bound `{0}`")]
    UnknownBound(String),

    #[error("unknown generator `{0}` (supported: ginibre, integer, accdiss, nilpotent2)")]
    UnknownGenerator(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerical kernels, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigenFailure { .. }
                | Error::FunctionEvaluation { .. }
                | Error::QuadratureNotConverged { .. }
                | Error::InverseDivergence { .. }
                | Error::NonFiniteTerm { .. }
        )
    }
}
