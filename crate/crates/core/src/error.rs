use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix dimension {dim} exceeds the configured maximum {max}")]
    TooLarge { dim: usize, max: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("QR iteration did not converge after {iterations} iterations (active block ending at row {row})")]
    NoConvergence { iterations: usize, row: usize },

    #[error("matrix is not Hermitian: ‖S − S†‖ = {defect:e} exceeds {tolerance:e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("matrix is not positive definite: eigenvalue {eigenvalue:e} ≤ 0")]
    NotPositiveDefinite { eigenvalue: f64 },

    #[error("matrix is not diagonalisable: {0}")]
    NotDiagonalisable(String),

    #[error("polynomial must have degree ≥ 1")]
    ZeroDegree,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("outside the real-similarity domain: radicand {name} = {value:e} must be positive")]
    DomainViolation { name: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical failure at grid point {point}: {source}")]
    GridPoint {
        point: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of the numerical kernels (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NoConvergence { .. }
            | Error::Singular
            | Error::NonFinite
            | Error::NotDiagonalisable(_) => true,
            Error::GridPoint { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
