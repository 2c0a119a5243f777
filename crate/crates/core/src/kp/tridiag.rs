//! Reduction of `−A + P` to tridiagonal form by a block-diagonal similarity.

use num_complex::Complex64;

use super::{require_k, KpError};
use crate::linalg::{complete_unitary, ComplexMatrix, SkewHermitianMatrix, SpecialUnitary, I};

/// Result of [`tridiagonalize`].
#[derive(Debug, Clone)]
pub struct Tridiagonalization {
    /// `K(−A+P)K†`, tridiagonal with purely imaginary entries.
    pub t: SkewHermitianMatrix,
    /// Unitary `diag(𝟙₂, S)` performing the reduction.
    pub k: ComplexMatrix,
    /// `K` times the scalar phase that brings its determinant to 1; it acts
    /// identically by conjugation.
    pub k_special: SpecialUnitary,
}

fn check_p_shape(p: &ComplexMatrix) -> Result<(), KpError> {
    let n = p.n();
    if n < 2 {
        return Err(KpError::BadPShape("dimension must be at least 2".into()));
    }
    let scale = p.max_abs().max(1.0);
    for i in 0..n {
        for j in 0..n {
            if (i, j) == (0, 1) || (i, j) == (1, 0) {
                continue;
            }
            if p[(i, j)].norm() > 1e-12 * scale {
                return Err(KpError::BadPShape(format!("entry ({i},{j}) is nonzero")));
            }
        }
    }
    let (p01, p10) = (p[(0, 1)], p[(1, 0)]);
    if p01.norm() == 0.0 || p10.norm() == 0.0 {
        return Err(KpError::BadPShape("coupling entry is zero".into()));
    }
    if p01.re.abs() > 1e-12 * scale || (p01 - p10).norm() > 1e-12 * scale {
        return Err(KpError::BadPShape(
            "coupling entry is not purely imaginary".into(),
        ));
    }
    Ok(())
}

/// Brings `−A + P` to tridiagonal form `T = K(−A+P)K†` with `K = diag(𝟙₂, S)`.
///
/// Column by column, the part of the current column below the subdiagonal is
/// rotated onto the subdiagonal by a unitary acting on the trailing block,
/// chosen so the new subdiagonal entry is `i·‖b‖`. The result has purely
/// imaginary entries, so `−iT` is real symmetric.
pub fn tridiagonalize(
    a: &SkewHermitianMatrix,
    p: &SkewHermitianMatrix,
) -> Result<Tridiagonalization, KpError> {
    let n = a.n();
    if p.n() != n {
        return Err(KpError::DimensionMismatch {
            left: n,
            right: p.n(),
        });
    }
    require_k(a.inner())?;
    check_p_shape(p.inner())?;

    let mut b = p.inner() - a.inner();
    let mut k = ComplexMatrix::identity(n);
    for j in 1..n.saturating_sub(1) {
        let col: Vec<Complex64> = (j + 1..n).map(|i| b[(i, j)]).collect();
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let first: Vec<Complex64> = col.iter().map(|z| -I * z / norm).collect();
        let s = complete_unitary(&first).adjoint();
        let g = ComplexMatrix::direct_sum(&ComplexMatrix::identity(j + 1), &s);
        b = b.conjugate_by(&g);
        k = &g * &k;
    }

    let det = k.det();
    let k_special = k.scale(Complex64::from_polar(1.0, -det.arg() / n as f64));
    Ok(Tridiagonalization {
        t: SkewHermitianMatrix::new(b)?,
        k,
        k_special: SpecialUnitary::new(k_special)?,
    })
}
