use lambdaopt_core::kp::{
    cartan_aiii, control_components, is_scalar_exponential, kp_split, lab_frame_controls,
    tridiagonalize, ControlBasis,
};
use lambdaopt_core::linalg::{
    eig_real_symmetric, expm_skew_hermitian, trace_inner, ComplexMatrix, SkewHermitianMatrix,
};
use lambdaopt_core::sampling::{haar_su, random_block_unitary, random_su_algebra};
use lambdaopt_core::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random element of the block-diagonal subalgebra.
fn random_k<R: Rng>(n: usize, rng: &mut R) -> SkewHermitianMatrix {
    let m = random_su_algebra(n, rng).into_inner();
    let k = ComplexMatrix::from_fn(n, |i, j| {
        if (i == 0) != (j == 0) {
            Complex64::new(0.0, 0.0)
        } else {
            m[(i, j)]
        }
    });
    SkewHermitianMatrix::new(k).unwrap()
}

/// `P = i·p·(E₀₁ + E₁₀)`.
fn coupling(n: usize, p: f64) -> SkewHermitianMatrix {
    let mut m = ComplexMatrix::zeros(n);
    m[(0, 1)] = Complex64::new(0.0, p);
    m[(1, 0)] = Complex64::new(0.0, p);
    SkewHermitianMatrix::new(m).unwrap()
}

/// Jacobi matrix with the given spectrum, by Lanczos on `diag(λ)` from a random start.
fn jacobi_with_spectrum<R: Rng>(lambda: &[f64], rng: &mut R) -> Vec<Vec<f64>> {
    let n = lambda.len();
    let mut q: Vec<f64> = (0..n).map(|_| rng.random_range(0.3..1.0)).collect();
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.iter_mut().for_each(|x| *x /= norm);
    let mut basis: Vec<Vec<f64>> = vec![q];
    let mut j = vec![vec![0.0; n]; n];
    for k in 0..n {
        let qk = basis[k].clone();
        let mut w: Vec<f64> = qk.iter().zip(lambda).map(|(x, l)| x * l).collect();
        let alpha: f64 = w.iter().zip(&qk).map(|(a, b)| a * b).sum();
        j[k][k] = alpha;
        // full reorthogonalization
        for _ in 0..2 {
            for b in &basis {
                let c: f64 = w.iter().zip(b).map(|(a, b)| a * b).sum();
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        if k + 1 < n {
            let beta = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            j[k][k + 1] = beta;
            j[k + 1][k] = beta;
            basis.push(w.into_iter().map(|x| x / beta).collect());
        }
    }
    j
}

/// Splits `iJ` into its block-diagonal part `−A` and coupling `P`.
fn split_tridiagonal(j: &[Vec<f64>]) -> (SkewHermitianMatrix, SkewHermitianMatrix) {
    let n = j.len();
    let m = ComplexMatrix::from_fn(n, |r, c| Complex64::new(0.0, j[r][c]));
    let s = kp_split(&m).unwrap();
    (s.k_part.scale(-1.0), s.p_part)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expm_group_law(seed in any::<u64>(), n in 2usize..=4, t in -3.0f64..3.0, s in -3.0f64..3.0) {
        let m = random_su_algebra(n, &mut rng(seed));
        let et = expm_skew_hermitian(m.inner(), t).unwrap();
        let es = expm_skew_hermitian(m.inner(), s).unwrap();
        let ets = expm_skew_hermitian(m.inner(), t + s).unwrap();
        prop_assert!(et.compose(&es).inner().max_abs_diff(ets.inner()) < 1e-9);
    }

    #[test]
    fn trace_inner_conjugation_invariant(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let c = random_su_algebra(n, &mut r).into_inner();
        let d = random_su_algebra(n, &mut r).into_inner();
        let k = haar_su(n, &mut r).into_inner();
        let lhs = trace_inner(&c.conjugate_by(&k), &d.conjugate_by(&k)).unwrap();
        let rhs = trace_inner(&c, &d).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn real_symmetric_trace(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        // packed lower triangle
        let vals: Vec<f64> = (0..n * (n + 1) / 2).map(|_| r.random_range(-2.0..2.0)).collect();
        let at = |i: usize, j: usize| {
            let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
            vals[hi * (hi + 1) / 2 + lo]
        };
        let a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| at(i, j)).collect()).collect();
        let ev = eig_real_symmetric(&a).unwrap();
        let tr: f64 = (0..n).map(|i| a[i][i]).sum();
        prop_assert!((ev.iter().sum::<f64>() - tr).abs() < 1e-10);
    }

    #[test]
    fn tridiagonalization_properties(seed in any::<u64>(), n in 3usize..=5) {
        let mut r = rng(seed);
        let a = random_k(n, &mut r);
        let p = coupling(n, r.random_range(0.2..2.0));
        let td = tridiagonalize(&a, &p).unwrap();
        let k = &td.k;
        prop_assert!(k.unitarity_residual() < 1e-12);
        prop_assert!(k.is_block_diagonal_1(1e-12));
        prop_assert!(k.principal_block(0, 2).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        let t = td.t.inner();
        for i in 0..n {
            for j in 0..n {
                if i.abs_diff(j) > 1 {
                    prop_assert!(t[(i, j)].norm() < 1e-12);
                }
                prop_assert!(t[(i, j)].re.abs() < 1e-12, "entry ({}, {}) = {}", i, j, t[(i, j)]);
            }
        }
        let drift = p.sub(&a);
        prop_assert!(t.conjugate_by(&k.adjoint()).max_abs_diff(drift.inner()) < 1e-9);
        let spectrum = |m: &ComplexMatrix| {
            let h = m.scale(Complex64::new(0.0, -1.0));
            lambdaopt_core::linalg::eigh(&h).unwrap().values
        };
        let (s1, s2) = (spectrum(t), spectrum(drift.inner()));
        for (x, y) in s1.iter().zip(&s2) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn scalar_check_conjugation_invariant(seed in any::<u64>(), t in 0.0f64..6.0) {
        let mut r = rng(seed);
        let a = random_k(3, &mut r);
        let p = coupling(3, 1.0);
        let k = random_block_unitary(3, &mut r).into_inner();
        let c1 = is_scalar_exponential(&a, &p, t, 1e-9);
        let c2 = is_scalar_exponential(&a.conjugate_by(&k), &p.conjugate_by(&k), t, 1e-9);
        prop_assert_eq!(c1.scalar, c2.scalar);
        if let (Some(x), Some(y)) = (c1.phase, c2.phase) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn block_diagonal_exponential_is_scalar(seed in any::<u64>(), n in 3usize..=4, lattice in any::<bool>()) {
        let mut r = rng(seed);
        let lambda: Vec<f64> = if lattice {
            // integer multiples of 2π summing to zero: e^{iJ} is scalar
            let mut v: Vec<f64> = (0..n - 1).map(|_| TAU * r.random_range(-3i64..=3) as f64).collect();
            let last = -v.iter().sum::<f64>();
            v.push(last);
            v.sort_by(f64::total_cmp);
            v.dedup();
            if v.len() < n {
                return Ok(());
            }
            v
        } else {
            let v: Vec<f64> = (0..n).map(|_| r.random_range(-8.0..8.0)).collect();
            let mean = v.iter().sum::<f64>() / n as f64;
            v.into_iter().map(|x| x - mean).collect()
        };
        let j = jacobi_with_spectrum(&lambda, &mut r);
        for i in 0..n - 1 {
            prop_assert!(j[i][i + 1].abs() > 1e-6);
        }
        let (a, p) = split_tridiagonal(&j);
        let e = p.sub(&a).exp(1.0).into_inner();
        let check = is_scalar_exponential(&a, &p, 1.0, 1e-9);
        if e.is_block_diagonal_1(1e-9) {
            prop_assert!(check.scalar, "{:?}", check);
        }
        if lattice {
            prop_assert!(check.scalar, "{:?}", check);
        }
    }

    #[test]
    fn control_norm_is_constant(seed in any::<u64>(), n in 3usize..=4, t in 0.0f64..10.0) {
        let mut r = rng(seed);
        let a = random_k(n, &mut r);
        let p = coupling(n, 1.0);
        let basis = ControlBasis::new(n);
        let v = control_components(&a, &p, t, &basis).unwrap();
        let norm2: f64 = v.iter().map(|x| x * x).sum();
        let pp = trace_inner(p.inner(), p.inner()).unwrap().re;
        prop_assert!((norm2 - pp).abs() < 1e-10);

        // the lab frame rotates the components orthogonally
        let diag: Vec<Complex64> = (0..n).map(|_| Complex64::new(0.0, r.random_range(-2.0..2.0))).collect();
        let mean = diag.iter().sum::<Complex64>() / n as f64;
        let drift = ComplexMatrix::from_diagonal(&diag.iter().map(|z| z - mean).collect::<Vec<_>>());
        let drift = SkewHermitianMatrix::new(drift).unwrap();
        let u = lab_frame_controls(&v, &drift, t, &basis).unwrap();
        let unorm2: f64 = u.iter().map(|x| x * x).sum();
        prop_assert!((unorm2 - norm2).abs() < 1e-10);
    }
}

#[test]
fn control_norm_on_hundred_geodesics() {
    let mut r = rng(7);
    let basis = ControlBasis::new(3);
    let p = coupling(3, 1.0);
    for _ in 0..100 {
        let a = random_k(3, &mut r);
        let t = r.random_range(0.0..20.0);
        let v = control_components(&a, &p, t, &basis).unwrap();
        let norm2: f64 = v.iter().map(|x| x * x).sum();
        assert!((norm2 - 2.0).abs() < 1e-10);
    }
}

#[test]
fn cartan_reconstruction_on_thousand_samples() {
    let mut r = rng(11);
    for n in [3, 4] {
        for _ in 0..1000 {
            let x = haar_su(n, &mut r);
            let f = cartan_aiii(&x);
            let err = f.reconstruct().max_abs_diff(x.inner());
            assert!(err < 1e-8, "n = {n}, error {err:e}");
            assert!(
                f.k1.inner().is_block_diagonal_1(1e-10) && f.k2.inner().is_block_diagonal_1(1e-10)
            );
        }
    }
}
