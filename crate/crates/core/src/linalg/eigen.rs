//! Cyclic Jacobi eigendecomposition of Hermitian matrices and the
//! exponentials built on top of it.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, I, ZERO};
use super::unitary::SpecialUnitary;
use super::LinalgError;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with the matching eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V·diag(f(λ))·V†`.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let fl: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum()
        })
    }
}

fn off_norm(h: &ComplexMatrix) -> f64 {
    let n = h.n();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += h[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input must be Hermitian to within `1e-9` relative to its largest entry;
/// the anti-Hermitian part is discarded.
pub fn eigh(h: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    let n = h.n();
    let scale = h.max_abs().max(1.0);
    let residual = h.hermitian_residual();
    if residual > 1e-9 * scale {
        return Err(LinalgError::NonHermitian { residual });
    }
    let mut a = (h + &h.adjoint()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    let total = a.frobenius_norm();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off = off_norm(&a);
        if off == 0.0 || off <= 1e-17 * total {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let g = a[(p, q)];
                let mag = g.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = g / mag;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..n {
                    let hp = a[(k, p)];
                    let hq = a[(k, q)];
                    a[(k, p)] = hp * gpp + hq * gqp;
                    a[(k, q)] = hp * gpq + hq * gqq;
                    let vp = v[(k, p)];
                    let vq = v[(k, q)];
                    v[(k, p)] = vp * gpp + vq * gqp;
                    v[(k, q)] = vp * gpq + vq * gqq;
                }
                for k in 0..n {
                    let hp = a[(p, k)];
                    let hq = a[(q, k)];
                    a[(p, k)] = gpp.conj() * hp + gqp.conj() * hq;
                    a[(q, k)] = gpq.conj() * hp + gqq.conj() * hq;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    if !converged && off_norm(&a) > 1e-12 * total.max(1.0) {
        return Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Ascending eigenvalues of a real symmetric matrix given by rows.
pub fn eig_real_symmetric(rows: &[Vec<f64>]) -> Result<Vec<f64>, LinalgError> {
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(LinalgError::Shape(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
    }
    let residual = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| (rows[i][j] - rows[j][i]).abs())
        .fold(0.0, f64::max);
    if residual > 1e-12 {
        return Err(LinalgError::NotSymmetric { residual });
    }
    Ok(eigh(&ComplexMatrix::real(rows)?)?.values)
}

/// `e^{Mt}` for skew-Hermitian `M`, without the determinant requirement.
pub(crate) fn exp_skew(m: &ComplexMatrix, t: f64) -> Result<ComplexMatrix, LinalgError> {
    let residual = m.skew_hermitian_residual();
    if residual > super::TOL_UNITARY * m.max_abs().max(1.0) {
        return Err(LinalgError::NonSkewHermitian { residual });
    }
    if t == 0.0 {
        return Ok(ComplexMatrix::identity(m.n()));
    }
    // M = iH with H Hermitian
    let h = m.scale(-I);
    let eig = eigh(&h)?;
    Ok(eig.apply(|l| Complex64::from_polar(1.0, l * t)))
}

/// `e^{Mt}` for a traceless skew-Hermitian `M`, via the eigendecomposition of `−iM`.
pub fn expm_skew_hermitian(m: &ComplexMatrix, t: f64) -> Result<SpecialUnitary, LinalgError> {
    let trace = m.trace().norm();
    if trace > super::TOL_UNITARY * m.max_abs().max(1.0) {
        // still report a skew-Hermitian violation first
        let residual = m.skew_hermitian_residual();
        if residual > super::TOL_UNITARY {
            return Err(LinalgError::NonSkewHermitian { residual });
        }
        return Err(LinalgError::NotTraceless { trace });
    }
    SpecialUnitary::new(exp_skew(m, t)?)
}

/// Eigenphases in `(−π, π]` and eigenvectors of a unitary matrix.
///
/// A unitary `U` shares its eigenvectors with the Hermitian matrix
/// `(U+U†)/2 + κ(U−U†)/(2i)`; two values of `κ` are tried and the one with
/// the better separated spectrum is kept.
pub fn unitary_eigen(u: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), LinalgError> {
    let n = u.n();
    let ud = u.adjoint();
    let sym = (u + &ud).scale_real(0.5);
    let anti = (u - &ud).scale(Complex64::new(0.0, -0.5));
    let mut best: Option<(f64, HermitianEigen)> = None;
    for kappa in [0.618_033_988_749_894_8, -std::f64::consts::SQRT_2] {
        let h = &sym + &anti.scale_real(kappa);
        let eig = eigh(&h)?;
        let gap = eig
            .values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        if best.as_ref().is_none_or(|b| gap > b.0) {
            best = Some((gap, eig));
        }
    }
    let eig = best.map(|b| b.1).expect("at least one candidate");
    let d = &(&eig.vectors.adjoint() * u) * &eig.vectors;
    let phases = (0..n).map(|j| d[(j, j)].arg()).collect();
    Ok((phases, eig.vectors))
}

/// Truncated Taylor series with scaling and squaring; used only as a test oracle.
#[cfg(test)]
pub(crate) fn expm_series(m: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let n = m.n();
    let mut squarings = 0;
    let mut x = m.scale_real(t);
    while x.max_abs() * n as f64 > 0.5 {
        x = x.scale_real(0.5);
        squarings += 1;
    }
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..30 {
        term = (&term * &x).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
