//! Random group elements for property tests and benchmarks.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{ComplexMatrix, SkewHermitianMatrix, SpecialUnitary};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Haar-distributed element of `SU(n)`: Gram–Schmidt on a complex Ginibre matrix,
/// then the determinant phase is divided out.
pub fn haar_su<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpecialUnitary {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= proj * ci;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let u = ComplexMatrix::from_fn(n, |i, j| cols[j][i]);
    let phase = Complex64::from_polar(1.0, -u.det().arg() / n as f64);
    SpecialUnitary::new(u.scale(phase)).expect("orthonormalized columns")
}

/// Random element `diag(e^{iη}, e^{−iη/(n−1)}V)` of `S(U(1)×U(n−1))`.
pub fn random_block_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpecialUnitary {
    let eta = rng.random_range(0.0..TAU);
    let v = haar_su(n - 1, rng)
        .into_inner()
        .scale(Complex64::from_polar(1.0, -eta / (n - 1) as f64));
    let head = ComplexMatrix::from_diagonal(&[Complex64::from_polar(1.0, eta)]);
    SpecialUnitary::new(ComplexMatrix::direct_sum(&head, &v)).expect("block phases cancel")
}

/// Random traceless skew-Hermitian matrix with Gaussian entries.
pub fn random_su_algebra<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SkewHermitianMatrix {
    let g = ComplexMatrix::from_fn(n, |_, _| gaussian(rng));
    let skew = (&g - &g.adjoint()).scale_real(0.5);
    let shift = skew.trace() / n as f64;
    let m = &skew - &ComplexMatrix::identity(n).scale(shift);
    SkewHermitianMatrix::new(m).expect("projected onto su(n)")
}
