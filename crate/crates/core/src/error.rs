use thiserror::Error;

/// Which density-matrix invariant an operator failed.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityViolation {
    Trace { trace: f64 },
    Hermiticity { defect: f64 },
    NegativeEigenvalue { eigenvalue: f64 },
}

impl std::fmt::Display for DensityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Trace { trace } => write!(f, "trace is {trace}, expected 1"),
            Self::Hermiticity { defect } => {
                write!(f, "not Hermitian, max |m - m^H| = {defect:e}")
            }
            Self::NegativeEigenvalue { eigenvalue } => {
                write!(f, "not positive semidefinite, eigenvalue {eigenvalue:e}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max deviation {defect:e} exceeds tolerance {tol:e}")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("negative eigenvalue {0:e}: not a valid density operator")]
    NegativeEigenvalue(f64),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(DensityViolation),
    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("operator is singular on the support of its partner (leaked weight {0:e})")]
    SingularOnSupport(f64),
    #[error("operation requires exactly {expected} factors, got {actual}")]
    FactorCount { expected: usize, actual: usize },
    #[error("subsystem index {index} out of range for {factors} factors")]
    SubsystemIndex { index: usize, factors: usize },
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("memory guard: state needs {required:.1} qubit-equivalents, limit is {limit}")]
    MemoryGuard { required: f64, limit: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed matrix file: {0}")]
    MalformedMatrix(String),
}

impl Error {
    /// True for failures of a numerical guard rather than of input validation.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Self::SingularOnSupport(_) | Self::NoConvergence(_) | Self::MemoryGuard { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
