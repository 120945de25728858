use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("input is not Hermitian (relative defect {defect:.3e})")]
    NonHermitianInput { defect: f64 },
    #[error("matrix is not positive definite (smallest pivot or eigenvalue {value:.6e})")]
    NotPositiveDefinite { value: f64 },
    #[error("leading block is singular at pivot {index}")]
    SingularLeadingBlock { index: usize },
    #[error("zero pivot at elimination stage {stage}")]
    ZeroPivot { stage: usize },
    #[error("argument out of domain: {0}")]
    DomainError(String),
    #[error("condition number {kappa:.6e} exceeds the cap {cap:.6e}")]
    KappaExceeded { kappa: f64, cap: f64 },
    #[error("matrix is not in the required class: {0}")]
    NotInClass(String),
    #[error("sector angle out of range: m*alpha = {m_alpha:.6e} must lie in [0, pi/2)")]
    AngleOutOfRange { m_alpha: f64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
