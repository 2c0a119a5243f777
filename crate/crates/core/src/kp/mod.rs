//! The block Cartan structure of `su(n)` used by Λ-type control problems.
//!
//! `su(n)` splits as `𝒦 ⊕ 𝒫`: `𝒦` holds the block-diagonal matrices with
//! blocks of size 1 and n−1, `𝒫` the off-diagonal blocks coupling level 0 to
//! the rest. The controls act along an orthonormal basis of `𝒫`.

mod cartan;
mod controls;
mod scalar;
mod tridiag;

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, LinalgError, SkewHermitianMatrix, ZERO};

pub use cartan::{cartan_aiii, givens_block, CartanFactors};
pub use controls::{control_components, lab_frame_controls, orthogonal_frame};
pub use scalar::{is_scalar_exponential, ScalarCheck};
pub use tridiag::{tridiagonalize, Tridiagonalization};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KpError {
    #[error("input is not skew-Hermitian: {0}")]
    NotSkewHermitian(LinalgError),
    #[error("matrix does not lie in the block-diagonal subalgebra (off-block entry {entry:.3e})")]
    NotInK { entry: f64 },
    #[error("matrix does not lie in the off-diagonal block (block-diagonal entry {entry:.3e})")]
    NotInP { entry: f64 },
    #[error("P must be zero except for equal, nonzero, purely imaginary (0,1)/(1,0) entries: {0}")]
    BadPShape(String),
    #[error("drift must be diagonal (off-diagonal entry {entry:.3e})")]
    NonDiagonalDrift { entry: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} control components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

const BLOCK_TOL: f64 = 1e-12;

/// The `𝒦` and `𝒫` components of an `su(n)` element.
#[derive(Debug, Clone, PartialEq)]
pub struct KPSplit {
    pub n: usize,
    pub k_part: SkewHermitianMatrix,
    pub p_part: SkewHermitianMatrix,
}

/// Splits `m` into its block-diagonal and off-block parts; the parts sum to `m` exactly.
pub fn kp_split(m: &ComplexMatrix) -> Result<KPSplit, KpError> {
    let m = SkewHermitianMatrix::new(m.clone()).map_err(KpError::NotSkewHermitian)?;
    let inner = m.inner();
    let n = inner.n();
    let off = |i: usize, j: usize| (i == 0) != (j == 0);
    let k = ComplexMatrix::from_fn(n, |i, j| if off(i, j) { ZERO } else { inner[(i, j)] });
    let p = ComplexMatrix::from_fn(n, |i, j| if off(i, j) { inner[(i, j)] } else { ZERO });
    Ok(KPSplit {
        n,
        // the p part is traceless and skew by construction, so k is too
        k_part: SkewHermitianMatrix::new(k)?,
        p_part: SkewHermitianMatrix::new(p)?,
    })
}

/// Largest entry of `m` coupling level 0 with another level.
pub(crate) fn off_block_max(m: &ComplexMatrix) -> f64 {
    (1..m.n())
        .map(|j| m[(0, j)].norm().max(m[(j, 0)].norm()))
        .fold(0.0, f64::max)
}

/// Largest entry of `m` inside the 1 ⊕ (n−1) block diagonal.
pub(crate) fn in_block_max(m: &ComplexMatrix) -> f64 {
    let n = m.n();
    let mut worst = m[(0, 0)].norm();
    for i in 1..n {
        for j in 1..n {
            worst = worst.max(m[(i, j)].norm());
        }
    }
    worst
}

pub(crate) fn require_k(a: &ComplexMatrix) -> Result<(), KpError> {
    let entry = off_block_max(a);
    if entry > BLOCK_TOL * a.max_abs().max(1.0) {
        return Err(KpError::NotInK { entry });
    }
    Ok(())
}

pub(crate) fn require_p(p: &ComplexMatrix) -> Result<(), KpError> {
    let entry = in_block_max(p);
    if entry > BLOCK_TOL * p.max_abs().max(1.0) {
        return Err(KpError::NotInP { entry });
    }
    Ok(())
}

/// Orthonormal basis `B_1 … B_{2(n−1)}` of `𝒫`.
///
/// `B_{2j−1}` has `1/√2` at `(0, j)` and `−1/√2` at `(j, 0)`; `B_{2j}` has
/// `i/√2` at both positions.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlBasis {
    n: usize,
    elements: Vec<SkewHermitianMatrix>,
}

impl ControlBasis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "control basis needs at least two levels");
        let h = FRAC_1_SQRT_2;
        let mut elements = Vec::with_capacity(2 * (n - 1));
        for j in 1..n {
            let mut real = ComplexMatrix::zeros(n);
            real[(0, j)] = Complex64::new(h, 0.0);
            real[(j, 0)] = Complex64::new(-h, 0.0);
            let mut imag = ComplexMatrix::zeros(n);
            imag[(0, j)] = Complex64::new(0.0, h);
            imag[(j, 0)] = Complex64::new(0.0, h);
            elements.push(SkewHermitianMatrix::new(real).expect("basis element in su(n)"));
            elements.push(SkewHermitianMatrix::new(imag).expect("basis element in su(n)"));
        }
        Self { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SkewHermitianMatrix] {
        &self.elements
    }

    /// `Σ_k u_k B_k`.
    pub fn combine(&self, u: &[f64]) -> Result<ComplexMatrix, KpError> {
        if u.len() != self.len() {
            return Err(KpError::ComponentCount {
                expected: self.len(),
                got: u.len(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.n);
        for (b, &x) in self.elements.iter().zip(u) {
            out = &out + &b.inner().scale_real(x);
        }
        Ok(out)
    }
}
