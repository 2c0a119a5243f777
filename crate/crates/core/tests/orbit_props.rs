use lambdaopt_core::linalg::SpecialUnitary;
use lambdaopt_core::orbit::{orbit_class, psi_fiber, psi_regular, OrbitClass};
use lambdaopt_core::sampling::{haar_su, random_block_unitary};
use lambdaopt_core::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

fn conj(x: &SpecialUnitary, k: &SpecialUnitary) -> SpecialUnitary {
    SpecialUnitary::new(x.inner().conjugate_by(k.inner())).unwrap()
}

#[test]
fn regular_classes_invariant_on_500_pairs() {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let x = haar_su(3, &mut r);
        let k = random_block_unitary(3, &mut r);
        let c1 = orbit_class(&x).unwrap();
        let c2 = orbit_class(&conj(&x, &k)).unwrap();
        let d = c1.distance(&c2).expect("same stratum");
        assert!(d < 1e-8, "{c1:?} vs {c2:?}");
    }
}

#[test]
fn fiber_classes_invariant() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let phi = r.random_range(0.0..TAU);
        let z = haar_su(2, &mut r);
        let x = psi_fiber(phi, &z).unwrap();
        let k = random_block_unitary(3, &mut r);
        let c1 = orbit_class(&x).unwrap();
        let c2 = orbit_class(&conj(&x, &k)).unwrap();
        assert_eq!(c1.stratum(), "fiber");
        assert!(c1.distance(&c2).unwrap() < 1e-8, "{c1:?} vs {c2:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn corner_entry_is_invariant(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let x = haar_su(3, &mut r);
        let k = random_block_unitary(3, &mut r);
        let y = conj(&x, &k);
        prop_assert!((y.inner()[(0, 0)] - x.inner()[(0, 0)]).norm() < 1e-14);
    }

    #[test]
    fn regular_round_trip(seed in any::<u64>(), rho in 0.0f64..0.999, arg in 0.0f64..TAU) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let x = Complex64::from_polar(rho, arg);
        let z = haar_su(2, &mut r);
        let rep = psi_regular(x, &z).unwrap();
        match orbit_class(&rep).unwrap() {
            OrbitClass::Regular { x: x2, z1 } => {
                prop_assert!((x2 - x).norm() < 1e-12);
                prop_assert!((z1 - z.inner()[(0, 0)]).norm() < 1e-8);
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn fiber_round_trip(seed in any::<u64>(), phi in 0.0f64..TAU) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let z = haar_su(2, &mut r);
        let rep = psi_fiber(phi, &z).unwrap();
        // s = Re(e^{−iφ/2}·(e^{iφ}Z₀₀ + Z₁₁)/2)
        let want = OrbitClass::Fiber {
            phi,
            s: (Complex64::from_polar(1.0, -phi / 2.0)
                * (Complex64::from_polar(1.0, phi) * z.inner()[(0, 0)] + z.inner()[(1, 1)])
                / 2.0)
                .re,
        };
        let got = orbit_class(&rep).unwrap();
        prop_assert!(got.distance(&want).unwrap() < 1e-9, "{:?} vs {:?}", got, want);
    }
}
