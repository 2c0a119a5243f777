//! Geodesic endpoint evaluation and the similarity that moves it onto the target.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::kp::is_scalar_exponential;
use crate::linalg::{eigh, unitary_eigen, ComplexMatrix, SkewHermitianMatrix, SpecialUnitary, I};

use super::{SynthesisError, TOL_SCALAR, TOL_SPECTRUM};

/// Whether `e^{(−A+P)t}` is scalar, with the lattice point its spectrum sits on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarOutcome {
    /// `e^{(−A+P)t} = e^{iφ}𝟙` and `spec(−i(−A+P))·t/2π = {k/3, k/3+m, −2k/3−m}`.
    Scalar {
        phase: f64,
        k: i64,
        m: i64,
    },
    NonScalar {
        deviation: f64,
    },
}

impl ScalarOutcome {
    pub fn phase(&self) -> Option<f64> {
        match self {
            ScalarOutcome::Scalar { phase, .. } => Some(*phase),
            ScalarOutcome::NonScalar { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Endpoint {
    pub u: SpecialUnitary,
    pub scalar: ScalarOutcome,
}

/// `U(t) = e^{At}·e^{(−A+P)t}` plus the scalar/lattice check on the second factor.
pub fn geodesic_endpoint(a: &SkewHermitianMatrix, p: &SkewHermitianMatrix, t: f64) -> Endpoint {
    let drift = p.sub(a);
    let u = a.exp(t).compose(&drift.exp(t));
    let check = is_scalar_exponential(a, p, t, TOL_SCALAR);
    let lattice = if u.n() == 3 {
        lattice_point(&drift, t)
    } else {
        None
    };
    let scalar = match (check.phase, lattice) {
        (Some(phase), Some((k, m))) => ScalarOutcome::Scalar { phase, k, m },
        _ => ScalarOutcome::NonScalar {
            deviation: check.worst.2,
        },
    };
    Endpoint { u, scalar }
}

/// Finds integers `(k, m)` with `spec(−i·M)·t/2π = {k/3, k/3+m, −2k/3−m}`.
fn lattice_point(m: &SkewHermitianMatrix, t: f64) -> Option<(i64, i64)> {
    let h = m.inner().scale(-I);
    let eig = eigh(&h).ok()?;
    let x: Vec<f64> = eig.values.iter().map(|v| v * t / TAU).collect();
    let tol = TOL_SPECTRUM * x.iter().fold(1.0, |acc: f64, v| acc.max(v.abs()));
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut best: Option<(i64, i64)> = None;
    for [i, j, l] in PERMS {
        let k = (3.0 * x[i]).round();
        let mm = (x[j] - k / 3.0).round();
        let want = [k / 3.0, k / 3.0 + mm, -2.0 * k / 3.0 - mm];
        let got = [x[i], x[j], x[l]];
        if want.iter().zip(&got).all(|(w, g)| (w - g).abs() <= tol) {
            let cand = (k as i64, mm as i64);
            if best.is_none_or(|b| (cand.0.abs(), cand.1.abs()) < (b.0.abs(), b.1.abs())) {
                best = Some(cand);
            }
        }
    }
    best
}

/// Result of [`conjugation_correction`]: `K₂·achieved·K₂† = e^{iγ}·target`.
#[derive(Debug, Clone, PartialEq)]
pub struct Correction {
    pub k2: SpecialUnitary,
    pub common_phase: f64,
}

/// Similarity `K₂ ∈ SU(2)` taking `achieved` to `target` up to a common phase.
///
/// Eigenvectors are paired by eigenvalue. The leftover relative phase is chosen
/// to make `K₂` as diagonal as possible, and the overall sign makes the leading
/// diagonal entry have positive real part (positive imaginary part if that is zero).
pub fn conjugation_correction(
    achieved: &ComplexMatrix,
    target: &ComplexMatrix,
) -> Result<Correction, SynthesisError> {
    if achieved.n() != 2 || target.n() != 2 {
        return Err(SynthesisError::NoSimilarity(format!(
            "expected 2x2 blocks, got {} and {}",
            achieved.n(),
            target.n()
        )));
    }
    for (name, m) in [("achieved", achieved), ("target", target)] {
        let r = m.unitarity_residual();
        if r > TOL_SPECTRUM {
            return Err(SynthesisError::NotUnitary {
                what: name,
                residual: r,
            });
        }
    }
    let (pa, ua) = unitary_eigen(achieved)?;
    let (pt, wt) = unitary_eigen(target)?;
    let ea: Vec<Complex64> = pa.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
    let et: Vec<Complex64> = pt.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();

    // pairing[j] = index of the target eigenvalue matched with achieved eigenvalue j
    let mut found: Option<([usize; 2], f64)> = None;
    for pairing in [[0, 1], [1, 0]] {
        let g = (ea[0] / et[pairing[0]]).arg();
        let rot = Complex64::from_polar(1.0, g);
        let ok = (0..2).all(|j| (ea[j] - rot * et[pairing[j]]).norm() <= TOL_SPECTRUM);
        if ok && found.is_none_or(|(_, h)| g.abs() < h.abs()) {
            found = Some((pairing, g));
        }
    }
    let Some((pairing, common_phase)) = found else {
        return Err(SynthesisError::NoSimilarity(format!(
            "eigenphases {pa:?} and {pt:?} differ by more than a common phase"
        )));
    };

    // K(θ) = w₀u₀† + e^{iθ}w₁u₁†; diagonal weight is maximal at θ = −arg Σ C_i B̄_i
    let w = |j: usize, i: usize| wt[(i, pairing[j])];
    let u = |j: usize, i: usize| ua[(i, j)];
    let bsum: Complex64 = (0..2)
        .map(|i| (w(1, i) * u(1, i).conj()) * (w(0, i) * u(0, i).conj()).conj())
        .sum();
    let theta = if bsum.norm() > 1e-12 {
        -bsum.arg()
    } else {
        0.0
    };
    let rel = Complex64::from_polar(1.0, theta);
    let mut k = ComplexMatrix::from_fn(2, |r, c| {
        w(0, r) * u(0, c).conj() + rel * w(1, r) * u(1, c).conj()
    });
    let root = k.det().sqrt();
    k = k.scale(root.inv());
    let lead = [k[(0, 0)], k[(1, 1)], k[(0, 1)]]
        .into_iter()
        .find(|z| z.norm() > 1e-12)
        .unwrap_or(k[(0, 0)]);
    if lead.re < -1e-12 || (lead.re.abs() <= 1e-12 && lead.im < 0.0) {
        k = k.scale_real(-1.0);
    }
    let k2 = SpecialUnitary::with_tol(k, 1e-8)?;
    let residual = achieved
        .conjugate_by(k2.inner())
        .max_abs_diff(&target.scale(Complex64::from_polar(1.0, common_phase)));
    if residual > TOL_SPECTRUM {
        return Err(SynthesisError::NoSimilarity(format!(
            "similarity residual {residual:e}"
        )));
    }
    Ok(Correction { k2, common_phase })
}
