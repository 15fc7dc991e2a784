use num_complex::Complex64;
use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input files or arguments.
    Parse,
    /// Input is well formed but outside the domain of the operation.
    Domain,
    /// An algorithm failed to converge or lost too much precision.
    Numerical,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("iteration did not converge after {0} steps")]
    NoConvergence(usize),
    #[error("linear system is rank deficient (rank {rank} of {size}, cond {cond:.3e})")]
    SingularSystem { rank: usize, size: usize, cond: f64 },
    #[error("result is not real: imaginary residue {0:.3e}")]
    NonRealResult(f64),
    #[error("point {0} is a pole")]
    PoleAtPoint(Complex64),
    #[error("{0} is not an eigenvalue of the requested multiplicity")]
    NotAnEigenvalue(Complex64),
    #[error("sample point {0} lies on the spectrum")]
    SampleOnSpectrum(Complex64),
    #[error("point {0} lies on the spectrum")]
    OnSpectrum(Complex64),
    #[error("fractional-linear transform has a pole (W + 1 = {0})")]
    PoleAt(Complex64),
    #[error("continued fraction step {step} produced a_k^2 = {value:.3e}")]
    NotHerglotzLike { step: usize, value: f64 },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("eigenvalue {0} is not in the open upper half-plane")]
    NonUpperHalfPlane(Complex64),
    #[error("inconsistent data: {0}")]
    InconsistentData(String),
    #[error("inconsistent counts: {0}")]
    InconsistentCounts(String),
    #[error("no matrix is consistent with the data: {0}")]
    NoConsistentMatrix(String),
    #[error("numerical breakdown at step {step}: a^2 = {value:.3e}")]
    NumericalBreakdown { step: usize, value: f64 },
    #[error("parameter t = {0} is excluded")]
    ExcludedParameter(Complex64),
    #[error("truncation of size {size} cannot give moments up to order {order}")]
    TruncationTooSmall { size: usize, order: usize },
    #[error("Hankel determinant h_{0} is not positive")]
    SingularHankel(usize),
    #[error("matrix is not in the required class: {0}")]
    InvalidMatrix(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            Parse(_) => ErrorKind::Parse,
            NoConvergence(_) | SingularSystem { .. } | NonRealResult(_) | NumericalBreakdown { .. } => {
                ErrorKind::Numerical
            }
            _ => ErrorKind::Domain,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
