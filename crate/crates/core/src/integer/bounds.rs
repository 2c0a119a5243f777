//! Region-C box of admissible `(l, r)` and its corner maximization.

use super::field::{li, si, Field};
use super::tuple::{region_of, Region, TargetPhases};
use super::IntegerError;

/// `l ∈ [a_hat, b_hat]`, `r ∈ [c_hat, d_hat]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxBounds {
    pub a_hat: i64,
    pub b_hat: i64,
    pub c_hat: i64,
    pub d_hat: i64,
}

impl BoxBounds {
    pub fn is_nonempty(&self) -> bool {
        self.a_hat <= self.b_hat && self.c_hat <= self.d_hat
    }

    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.a_hat..=self.b_hat).flat_map(move |l| (self.c_hat..=self.d_hat).map(move |r| (l, r)))
    }
}

fn require_c(k: i64, s2: i64) -> Result<(), IntegerError> {
    if region_of(k, s2) != Some(Region::C) {
        return Err(IntegerError::WrongRegion {
            k,
            s2,
            expected: "C",
        });
    }
    Ok(())
}

/// Integer box of `(l, r)` satisfying the region-C ordering
/// `k/6 − s < ψ̂_r < −k/3 < φ̂_l < k/6 + s`.
pub fn box_bounds<T: Field>(
    k: i64,
    s2: i64,
    phases: &TargetPhases<T>,
) -> Result<BoxBounds, IntegerError> {
    require_c(k, s2)?;
    let k6 = T::ratio(k, 6);
    let k3 = T::ratio(k, 3);
    let s = T::ratio(s2, 2);
    let (a, b) = (phases.alpha_hat, phases.beta_hat);
    Ok(BoxBounds {
        c_hat: si(k6 - s - b),
        d_hat: li(-k3 - b),
        a_hat: si(-k3 - a),
        b_hat: li(k6 + s - a),
    })
}

/// `F(l, r) = α̂² + α̂(l − r) + l² + r² + lr`, i.e. `φ̂² + ψ̂² + φ̂ψ̂` when `β̂ = −α̂`.
pub fn f_value<T: Field>(alpha_hat: T, l: i64, r: i64) -> T {
    let (lf, rf) = (T::from_i64(l), T::from_i64(r));
    alpha_hat * alpha_hat + alpha_hat * (lf - rf) + lf * lf + rf * rf + lf * rf
}

fn check_alpha<T: Field>(alpha_hat: T) -> Result<(), IntegerError> {
    let third = T::ratio(1, 3);
    if !(alpha_hat > -third && alpha_hat < third) || alpha_hat == T::zero() {
        return Err(IntegerError::PhaseOutOfRange(format!(
            "alpha_hat = {} must satisfy 0 < |alpha_hat| < 1/3",
            alpha_hat.to_f64()
        )));
    }
    Ok(())
}

/// Corner of the region-C box maximizing `F`, chosen from `h = k mod 6` and
/// the sign of `α̂` (with `β̂ = −α̂` and `k ≥ 0`).
pub fn corner_max_f<T: Field>(
    k: i64,
    s2: i64,
    alpha_hat: T,
) -> Result<(i64, i64, T), IntegerError> {
    check_alpha(alpha_hat)?;
    require_c(k, s2)?;
    if k < 0 {
        return Err(IntegerError::WrongRegion {
            k,
            s2,
            expected: "C with k >= 0",
        });
    }
    let bb = box_bounds(k, s2, &TargetPhases::antisymmetric(alpha_hat)?)?;
    let (l, r) = if alpha_hat > T::zero() {
        (bb.b_hat, bb.c_hat)
    } else {
        match k % 6 {
            0 | 3 => (bb.b_hat, bb.c_hat),
            2 | 5 => (bb.b_hat, bb.d_hat),
            _ => (bb.a_hat, bb.c_hat),
        }
    };
    Ok((l, r, f_value(alpha_hat, l, r)))
}

/// Maximum of `F` over every point of the box; `None` when the box is empty.
pub fn exhaustive_box_max<T: Field>(bb: &BoxBounds, alpha_hat: T) -> Option<(i64, i64, T)> {
    let mut best: Option<(i64, i64, T)> = None;
    for (l, r) in bb.points() {
        let f = f_value(alpha_hat, l, r);
        if best.is_none_or(|b| f > b.2) {
            best = Some((l, r, f));
        }
    }
    best
}

/// Minimum of `T²` over region-C tuples with `k ≥ 0`, `k ≡ h (mod 6)`, as a
/// closed form in `α̂` (with `β̂ = −α̂`, `0 < |α̂| < 1/3`).
pub fn region_c_bound<T: Field>(h: u8, alpha_hat: T) -> Result<T, IntegerError> {
    check_alpha(alpha_hat)?;
    let a = alpha_hat;
    let q = |n: i64, d: i64| T::ratio(n, d);
    let sq = a * a;
    let v = if a > T::zero() {
        match h {
            0 => q(1, 1) - sq,
            1 => q(4, 3) - q(2, 1) * a - sq,
            2 => q(4, 3) - q(3, 1) * a - sq,
            3 => q(4, 1) - q(3, 1) * a - sq,
            4 => q(10, 3) - q(5, 1) * a - sq,
            5 => q(7, 3) - q(6, 1) * a - sq,
            _ => return Err(IntegerError::BadResidue(h)),
        }
    } else {
        match h {
            0 => -q(2, 1) * a - sq,
            1 => q(4, 3) - a - sq,
            2 => q(4, 3) - q(3, 1) * a - sq,
            3 => -q(5, 1) * a - sq,
            4 => q(10, 3) - a - sq,
            5 => q(7, 3) - q(6, 1) * a - sq,
            _ => return Err(IntegerError::BadResidue(h)),
        }
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_box() {
        let ph = TargetPhases::new(-0.125, 0.125).unwrap();
        let bb = box_bounds(0, 2, &ph).unwrap();
        assert_eq!(
            bb,
            BoxBounds {
                a_hat: 1,
                b_hat: 1,
                c_hat: -1,
                d_hat: -1
            }
        );
    }

    #[test]
    fn second_branch_box_contains_optimum() {
        let ph = TargetPhases::antisymmetric(0.3).unwrap();
        let bb = box_bounds(2, 4, &ph).unwrap();
        assert!(bb.points().any(|p| p == (2, -1)));
    }

    #[test]
    fn corner_examples() {
        let (l, r, _) = corner_max_f(2, 4, 0.3).unwrap();
        assert_eq!((l, r), (2, -1));
        let (l, r, _) = corner_max_f(0, 2, -0.125).unwrap();
        assert_eq!((l, r), (1, -1));
    }

    #[test]
    fn corner_errors() {
        assert!(matches!(
            corner_max_f(2, 2, 0.1),
            Err(IntegerError::WrongRegion { .. })
        ));
        assert!(matches!(
            corner_max_f(0, 2, 0.4),
            Err(IntegerError::PhaseOutOfRange(_))
        ));
        assert!(matches!(
            box_bounds(4, 2, &TargetPhases::antisymmetric(0.1).unwrap()),
            Err(IntegerError::WrongRegion { .. })
        ));
    }
}
