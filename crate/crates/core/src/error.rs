use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("non-finite entry at row {row}, col {col}")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {0} is not even")]
    OddDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (asymmetry {residual:e})")]
    NotSymmetric { residual: f64 },

    #[error("not positive-definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("not positive-semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("negative power of a singular matrix (smallest eigenvalue {min_eigenvalue:e})")]
    SingularPower { min_eigenvalue: f64 },

    #[error("subspace is not symplectic: largest remaining symplectic pairing {pivot:e}")]
    NotSymplecticSubspace { pivot: f64 },

    #[error("kernel of dimension {dim} is not symplectic (smallest pairing {pivot:e})")]
    KernelNotSymplectic { dim: usize, pivot: f64 },

    #[error("forms {i} and {j} do not Poisson-commute (commutator norm {residual:e})")]
    NotCommuting { i: usize, j: usize, residual: f64 },

    #[error("matrices do not commute (commutator norm {residual:e})")]
    NotCommutingPlain { residual: f64 },

    #[error("matrix does not commute with J (‖JM − MJ‖ = {residual:e})")]
    NotJCommuting { residual: f64 },

    #[error("shared mode {index}: degenerate value {degenerate} differs from {full}")]
    SpectrumMismatch { index: usize, degenerate: f64, full: f64 },

    #[error("numerical degeneracy: {0}")]
    Degeneracy(String),

    #[error("residual subspace of dimension {dim} admits no normal-form case")]
    ResidualSubspace { dim: usize },

    #[error("partition function diverges: total Hamiltonian is flat along {dim} direction(s) (smallest eigenvalue {value:e})")]
    DivergentMode { dim: usize, value: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NotConverged { sweeps: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Numeric diagnostic carried by precondition failures, if any.
    pub fn residual(&self) -> Option<f64> {
        match *self {
            Error::NotSymmetric { residual }
            | Error::NotCommuting { residual, .. }
            | Error::NotCommutingPlain { residual }
            | Error::NotJCommuting { residual } => Some(residual),
            Error::NotPositiveDefinite { min_eigenvalue }
            | Error::NotPositiveSemidefinite { min_eigenvalue }
            | Error::SingularPower { min_eigenvalue } => Some(min_eigenvalue),
            Error::NotSymplecticSubspace { pivot } | Error::KernelNotSymplectic { pivot, .. } => {
                Some(pivot)
            }
            Error::DivergentMode { value, .. } => Some(value),
            _ => None,
        }
    }

    /// True for malformed input (as opposed to a mathematically rejected one).
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
