//! Control amplitudes along an extremal and their lab-frame counterparts.

use num_complex::Complex64;

use super::{require_k, require_p, ControlBasis, KpError};
use crate::linalg::{trace_inner, ComplexMatrix, SkewHermitianMatrix};

/// `v_k(t) = ⟨e^{At} P e^{−At}, B_k⟩` for every basis element.
pub fn control_components(
    a: &SkewHermitianMatrix,
    p: &SkewHermitianMatrix,
    t: f64,
    basis: &ControlBasis,
) -> Result<Vec<f64>, KpError> {
    for m in [a.n(), p.n()] {
        if m != basis.n() {
            return Err(KpError::DimensionMismatch {
                left: m,
                right: basis.n(),
            });
        }
    }
    require_k(a.inner())?;
    require_p(p.inner())?;
    let rotated = p.inner().conjugate_by(a.exp(t).inner());
    basis
        .elements()
        .iter()
        .map(|b| Ok(trace_inner(&rotated, b.inner())?.re))
        .collect()
}

fn diagonal_phases(drift: &SkewHermitianMatrix, t: f64) -> Result<Vec<Complex64>, KpError> {
    let d = drift.inner();
    let n = d.n();
    let mut entry: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entry = entry.max(d[(i, j)].norm());
            }
        }
    }
    if entry > 1e-12 {
        return Err(KpError::NonDiagonalDrift { entry });
    }
    Ok((0..n).map(|i| (d[(i, i)] * t).exp()).collect())
}

/// The orthogonal matrix `a(t)` with `e^{−Dt} B_j e^{Dt} = Σ_k a_{jk}(t) B_k`.
pub fn orthogonal_frame(
    drift: &SkewHermitianMatrix,
    t: f64,
    basis: &ControlBasis,
) -> Result<Vec<Vec<f64>>, KpError> {
    if drift.n() != basis.n() {
        return Err(KpError::DimensionMismatch {
            left: drift.n(),
            right: basis.n(),
        });
    }
    let phases = diagonal_phases(drift, t)?;
    let e_plus = ComplexMatrix::from_diagonal(&phases);
    let e_minus = e_plus.adjoint();
    basis
        .elements()
        .iter()
        .map(|bj| {
            let rotated = &(&e_minus * bj.inner()) * &e_plus;
            basis
                .elements()
                .iter()
                .map(|bk| Ok(trace_inner(&rotated, bk.inner())?.re))
                .collect()
        })
        .collect()
}

/// Lab-frame controls `u = a(t)·v` for a diagonal drift `D`; `‖u‖ = ‖v‖`.
pub fn lab_frame_controls(
    v: &[f64],
    drift: &SkewHermitianMatrix,
    t: f64,
    basis: &ControlBasis,
) -> Result<Vec<f64>, KpError> {
    if v.len() != basis.len() {
        return Err(KpError::ComponentCount {
            expected: basis.len(),
            got: v.len(),
        });
    }
    let a = orthogonal_frame(drift, t, basis)?;
    Ok(a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect())
}
