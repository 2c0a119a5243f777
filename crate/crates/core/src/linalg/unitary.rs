//! Validated wrappers: special unitary group elements and `su(n)` generators.

use super::eigen::expm_skew_hermitian;
use super::matrix::{ComplexMatrix, ONE};
use super::{LinalgError, TOL_UNITARY};

/// Element of `SU(n)`: unitary with unit determinant, both to within a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialUnitary(ComplexMatrix);

impl SpecialUnitary {
    pub fn new(m: ComplexMatrix) -> Result<Self, LinalgError> {
        Self::with_tol(m, TOL_UNITARY)
    }

    pub fn with_tol(m: ComplexMatrix, tol: f64) -> Result<Self, LinalgError> {
        let unitarity = m.unitarity_residual();
        let det_err = (m.det() - ONE).norm();
        if unitarity >= tol || det_err >= tol {
            return Err(LinalgError::NotSpecialUnitary { unitarity, det_err });
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn inner(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Group product; closed in `SU(n)` so no re-validation.
    pub fn compose(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }
}

/// Traceless skew-Hermitian matrix, i.e. an element of `su(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewHermitianMatrix(ComplexMatrix);

impl SkewHermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self, LinalgError> {
        Self::with_tol(m, TOL_UNITARY)
    }

    pub fn with_tol(m: ComplexMatrix, tol: f64) -> Result<Self, LinalgError> {
        let scale = m.max_abs().max(1.0);
        let residual = m.skew_hermitian_residual();
        if residual >= tol * scale {
            return Err(LinalgError::NonSkewHermitian { residual });
        }
        let trace = m.trace().norm();
        if trace >= tol * scale {
            return Err(LinalgError::NotTraceless { trace });
        }
        Ok(Self(m))
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n))
    }

    pub fn inner(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// `e^{Mt}`.
    pub fn exp(&self, t: f64) -> SpecialUnitary {
        expm_skew_hermitian(&self.0, t).expect("validated generator exponentiates into SU(n)")
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn scale(&self, x: f64) -> Self {
        Self(self.0.scale_real(x))
    }

    /// `K·M·K†` for unitary `K`; stays in `su(n)`.
    pub fn conjugate_by(&self, k: &ComplexMatrix) -> Self {
        Self(self.0.conjugate_by(k))
    }
}
