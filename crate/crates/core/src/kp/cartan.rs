//! Cartan factorization `X = K₁·M(θ)·K₂` for the 1 ⊕ (n−1) block split.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::linalg::{complete_unitary, ComplexMatrix, SpecialUnitary, ONE, ZERO};

/// Below this value of `sin θ` the input is treated as block diagonal.
const DEGENERATE_SIN: f64 = 1e-12;

/// `X = K₁·M(θ)·K₂` with `K₁, K₂ ∈ S(U(1)×U(n−1))` and `sin θ ≥ 0`.
#[derive(Debug, Clone)]
pub struct CartanFactors {
    pub k1: SpecialUnitary,
    pub theta: f64,
    pub k2: SpecialUnitary,
}

impl CartanFactors {
    pub fn m(&self) -> ComplexMatrix {
        givens_block(self.k1.n(), self.theta)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        &(self.k1.inner() * &self.m()) * self.k2.inner()
    }

    /// `(η, V)` with `K = diag(e^{iη}, e^{−iη/(n−1)}V)`, `η ∈ [0, 2π)` and `V ∈ SU(n−1)`.
    pub fn k1_parts(&self) -> (f64, ComplexMatrix) {
        block_parts(self.k1.inner())
    }

    pub fn k2_parts(&self) -> (f64, ComplexMatrix) {
        block_parts(self.k2.inner())
    }
}

fn block_parts(k: &ComplexMatrix) -> (f64, ComplexMatrix) {
    let n = k.n();
    let eta = k[(0, 0)].arg().rem_euclid(TAU);
    let v = k
        .principal_block(1, n - 1)
        .scale(Complex64::from_polar(1.0, eta / (n - 1) as f64));
    (eta, v)
}

/// `M(θ)`: rotation by `θ` in the (0,1) plane, identity elsewhere.
pub fn givens_block(n: usize, theta: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(n);
    let (s, c) = theta.sin_cos();
    m[(0, 0)] = c.into();
    m[(0, 1)] = s.into();
    m[(1, 0)] = (-s).into();
    m[(1, 1)] = c.into();
    m
}

/// Factorizes `X ∈ SU(n)` as `K₁·M(θ)·K₂` with `cos θ = |X₀₀|`.
///
/// When `X` is block diagonal (`sin θ` below `1e-12`) the result is
/// `θ = 0`, `K₁ = X`, `K₂ = 𝟙`.
pub fn cartan_aiii(x: &SpecialUnitary) -> CartanFactors {
    let n = x.n();
    let xm = x.inner();
    let x00 = xm[(0, 0)];
    let col: Vec<Complex64> = (1..n).map(|i| xm[(i, 0)]).collect();
    let row: Vec<Complex64> = (1..n).map(|j| xm[(0, j)]).collect();
    let s = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let r_norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n < 2 || s <= DEGENERATE_SIN || r_norm <= DEGENERATE_SIN {
        return CartanFactors {
            k1: x.clone(),
            theta: 0.0,
            k2: SpecialUnitary::identity(n),
        };
    }

    // K₁' sends e₁ of the trailing block to −c/s; K₂' has first trailing row r/|r|
    let u1: Vec<Complex64> = col.iter().map(|z| -z / s).collect();
    let w1 = complete_unitary(&u1);
    let u2c: Vec<Complex64> = row.iter().map(|z| z.conj() / r_norm).collect();
    let w2 = complete_unitary(&u2c).adjoint();
    let one = ComplexMatrix::identity(1);
    let k1p = ComplexMatrix::direct_sum(&one, &w1);
    let k2p = ComplexMatrix::direct_sum(&one, &w2);

    // Q = [[x, s], [−s, x̄]] ⊕ Y'
    let q = &(&k1p.adjoint() * xm) * &k2p.adjoint();
    let phi = x00.arg();
    let theta = x00.norm().clamp(0.0, 1.0).acos();
    let f = ComplexMatrix::from_fn(n, |i, j| match (i, j) {
        (0, 0) => Complex64::from_polar(1.0, phi / 2.0),
        (1, 1) => Complex64::from_polar(1.0, -phi / 2.0),
        (i, j) if i == j => ONE,
        _ => ZERO,
    });
    let tail = ComplexMatrix::from_fn(n, |i, j| {
        if i < 2 || j < 2 {
            if i == j {
                ONE
            } else {
                ZERO
            }
        } else {
            q[(i, j)]
        }
    });
    let k1 = &k1p * &f;
    let k2 = &(&f * &tail) * &k2p;

    let omega = Complex64::from_polar(1.0, -k1.det().arg() / n as f64);
    let k1 = k1.scale(omega);
    let k2 = k2.scale(omega.conj());
    CartanFactors {
        k1: SpecialUnitary::with_tol(k1, 1e-8).expect("K₁ special unitary by construction"),
        theta,
        k2: SpecialUnitary::with_tol(k2, 1e-8).expect("K₂ special unitary by construction"),
    }
}
