//! Test whether `e^{(−A+P)t}` is a multiple of the identity.

use crate::linalg::SkewHermitianMatrix;

/// Outcome of [`is_scalar_exponential`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarCheck {
    pub scalar: bool,
    /// `φ` with `e^{(−A+P)t} ≈ e^{iφ}𝟙`, when scalar.
    pub phase: Option<f64>,
    /// Entry deviating most from `e^{iφ}𝟙`, with the deviation.
    pub worst: (usize, usize, f64),
}

/// Checks entrywise whether `e^{(−A+P)t} = e^{iφ}𝟙` within `tol`.
pub fn is_scalar_exponential(
    a: &SkewHermitianMatrix,
    p: &SkewHermitianMatrix,
    t: f64,
    tol: f64,
) -> ScalarCheck {
    let e = p.sub(a).exp(t);
    let e = e.inner();
    let n = e.n();
    // average the diagonal so no single entry sets the reference
    let mean = e.trace() / n as f64;
    let lambda = if mean.norm() > 0.0 {
        mean / mean.norm()
    } else {
        mean
    };
    let mut worst = (0, 0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { lambda } else { 0.0.into() };
            let dev = (e[(i, j)] - want).norm();
            if dev > worst.2 {
                worst = (i, j, dev);
            }
        }
    }
    let scalar = worst.2 <= tol;
    ScalarCheck {
        scalar,
        phase: scalar.then(|| lambda.arg()),
        worst,
    }
}
