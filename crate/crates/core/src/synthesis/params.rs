//! From an integer tuple to the control parameters `(a, b, c, t)`.

use std::f64::consts::TAU;

use crate::integer::{IntegerTuple, TargetPhases};
use crate::linalg::{ComplexMatrix, SkewHermitianMatrix, I};

use super::SynthesisError;

/// Sign given to `c = ±√c²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CSign {
    #[default]
    Plus,
    Minus,
}

/// Parameters of the extremal: `A` is built from `(a, b, c)` and the motion lasts `t = 2πT`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub t: f64,
    pub t_norm: f64,
}

/// Solves for `(a, b, c, t)` given an admissible tuple.
///
/// With `m = s − k/2`, `φ̂ = α̂ + l`, `ψ̂ = β̂ + r`:
/// `T² = k²/3 + km + m² − (φ̂² + ψ̂² + φ̂ψ̂)`,
/// `b = [(k/3)(k/3 + m)(2k/3 + m) + (φ̂ + ψ̂)φ̂ψ̂] / T³`,
/// `a = −(φ̂ + ψ̂)/T − b`, `c² = ab − φ̂ψ̂/T²`.
pub fn recover_params(
    tuple: &IntegerTuple,
    phases: &TargetPhases,
    c_sign: CSign,
) -> Result<ControlParams, SynthesisError> {
    let k = tuple.k as f64;
    let m = tuple.m() as f64;
    let phi = phases.phi(tuple.l);
    let psi = phases.psi(tuple.r);
    let t2 = k * k / 3.0 + k * m + m * m - (phi * phi + psi * psi + phi * psi);
    if t2 <= 0.0 {
        return Err(SynthesisError::InadmissibleTuple {
            c_squared: f64::NAN,
            detail: format!("T^2 = {t2} is not positive"),
        });
    }
    let tn = t2.sqrt();
    let lattice = (k / 3.0) * (k / 3.0 + m) * (2.0 * k / 3.0 + m);
    let b = (lattice + (phi + psi) * phi * psi) / (t2 * tn);
    let a = -(phi + psi) / tn - b;
    let c2 = a * b - phi * psi / t2;
    if c2 <= 0.0 {
        let (hi, lo) = if phi > psi { (phi, psi) } else { (psi, phi) };
        return Err(SynthesisError::InadmissibleTuple {
            c_squared: c2,
            detail: format!("b = {b} violates {} < b < {}", -hi / tn, -lo / tn),
        });
    }
    let c = match c_sign {
        CSign::Plus => c2.sqrt(),
        CSign::Minus => -c2.sqrt(),
    };
    Ok(ControlParams {
        a,
        b,
        c,
        t: TAU * tn,
        t_norm: tn,
    })
}

/// `A = [[i(a+b), 0, 0], [0, −ia, −ic], [0, −ic, −ib]]` and `P` with `i` at `(0,1)`, `(1,0)`.
pub fn build_ap(params: &ControlParams) -> (SkewHermitianMatrix, SkewHermitianMatrix) {
    let ControlParams { a, b, c, .. } = *params;
    let mut am = ComplexMatrix::zeros(3);
    am[(0, 0)] = I * (a + b);
    am[(1, 1)] = -I * a;
    am[(1, 2)] = -I * c;
    am[(2, 1)] = -I * c;
    am[(2, 2)] = -I * b;
    let mut pm = ComplexMatrix::zeros(3);
    pm[(0, 1)] = I;
    pm[(1, 0)] = I;
    (
        SkewHermitianMatrix::new(am).expect("A is in su(3) by construction"),
        SkewHermitianMatrix::new(pm).expect("P is in su(3) by construction"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_parameters() {
        let ph = TargetPhases::new(-0.125, 0.125).unwrap();
        let tuple = IntegerTuple::new(0, 2, 1, -1).unwrap();
        let p = recover_params(&tuple, &ph, CSign::Plus).unwrap();
        assert!(p.a.abs() < 1e-12 && p.b.abs() < 1e-12);
        assert!((p.c * p.c - 49.0 / 15.0).abs() < 1e-12);
        assert!((p.t - 15f64.sqrt() * std::f64::consts::PI / 4.0).abs() < 1e-12);
        let (a, pm) = build_ap(&p);
        assert!((a.inner()[(1, 2)] + I * 7.0 / 15f64.sqrt()).norm() < 1e-12);
        assert_eq!(a.inner().trace(), 0.0.into());
        assert_eq!(pm.inner()[(0, 1)], I);
    }

    #[test]
    fn success_matches_admissibility() {
        use crate::integer::admissible_any_order;
        let ph = TargetPhases::new(0.125, -0.125).unwrap();
        let mut rejected = 0;
        for k in -3..=3i64 {
            for s2 in (k.rem_euclid(2)..=6).step_by(2) {
                for l in -2..=2 {
                    for r in -2..=2 {
                        let t = IntegerTuple::new(k, s2, l, r).unwrap();
                        let res = recover_params(&t, &ph, CSign::Plus);
                        assert_eq!(res.is_ok(), admissible_any_order(&t, &ph), "{t:?}");
                        if let Err(SynthesisError::InadmissibleTuple { .. }) = res {
                            rejected += 1;
                        }
                    }
                }
            }
        }
        assert!(rejected > 0);
    }
}
