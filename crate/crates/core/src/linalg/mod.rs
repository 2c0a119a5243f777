//! Dense complex linear algebra for small matrices.

mod eigen;
mod matrix;
mod unitary;

pub use eigen::{eig_real_symmetric, eigh, expm_skew_hermitian, unitary_eigen, HermitianEigen};
pub(crate) use matrix::complete_unitary;
pub use matrix::{trace_inner, ComplexMatrix};
pub use matrix::{I, ONE, ZERO};
pub use unitary::{SkewHermitianMatrix, SpecialUnitary};

/// Default tolerance for unitarity, determinant and skew-Hermitian checks.
pub const TOL_UNITARY: f64 = 1e-9;
/// Default tolerance for eigenvalue comparisons.
pub const TOL_EIG: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("malformed matrix: {0}")]
    Shape(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not skew-Hermitian (residual {residual:.3e})")]
    NonSkewHermitian { residual: f64 },
    #[error("matrix is not traceless (|trace| = {trace:.3e})")]
    NotTraceless { trace: f64 },
    #[error("matrix is not special unitary (unitarity residual {unitarity:.3e}, |det - 1| = {det_err:.3e})")]
    NotSpecialUnitary { unitarity: f64, det_err: f64 },
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NonHermitian { residual: f64 },
    #[error("matrix is not symmetric (residual {residual:.3e})")]
    NotSymmetric { residual: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}
