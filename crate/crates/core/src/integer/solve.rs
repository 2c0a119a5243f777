//! Minimizers of `T²`: the closed form for `β̂ = −α̂` and an exhaustive search.

use rayon::prelude::*;

use super::field::Field;
use super::tuple::{admissible_any_order, t_squared, IntegerTuple, TargetPhases};
use super::IntegerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseSign {
    Positive,
    Negative,
}

impl PhaseSign {
    pub fn apply<T: Field>(self, x: T) -> T {
        match self {
            Self::Positive => x,
            Self::Negative => -x,
        }
    }
}

/// Optimum for `β̂ = −α̂`: which sign to give `α̂`, the tuple and `T²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm<T> {
    pub sign: PhaseSign,
    pub tuple: IntegerTuple,
    pub t_squared: T,
}

/// Closed-form minimum for `β̂ = −α̂`, `0 < |α̂| < 1/3`.
///
/// For `|α̂| ≤ 4/15` the optimum is `(0, 1, 1, −1)` with `α̂ < 0` and
/// `T² = 2|α̂| − α̂²`; above it `(2, 2, 2, −1)` with `α̂ > 0` and
/// `T² = 4/3 − 3|α̂| − α̂²`. Both agree at `4/15`, where the first is returned.
pub fn solve_closed_form<T: Field>(alpha_abs: T) -> Result<ClosedForm<T>, IntegerError> {
    if !(alpha_abs > T::zero() && alpha_abs < T::ratio(1, 3)) {
        return Err(IntegerError::PhaseOutOfRange(format!(
            "|alpha_hat| = {} must lie in (0, 1/3)",
            alpha_abs.to_f64()
        )));
    }
    let a = alpha_abs;
    if a <= T::ratio(4, 15) {
        Ok(ClosedForm {
            sign: PhaseSign::Negative,
            tuple: IntegerTuple {
                k: 0,
                s2: 2,
                l: 1,
                r: -1,
            },
            t_squared: T::from_i64(2) * a - a * a,
        })
    } else {
        Ok(ClosedForm {
            sign: PhaseSign::Positive,
            tuple: IntegerTuple {
                k: 2,
                s2: 4,
                l: 2,
                r: -1,
            },
            t_squared: T::ratio(4, 3) - T::from_i64(3) * a - a * a,
        })
    }
}

/// Enumeration box: `|k| ≤ k_max`, `0 ≤ s ≤ s_max`, `|l| ≤ l_max`, `|r| ≤ r_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub k_max: i64,
    pub s_max: i64,
    pub l_max: i64,
    pub r_max: i64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            k_max: 12,
            s_max: 12,
            l_max: 8,
            r_max: 8,
        }
    }
}

/// Admissible minimizer found by enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForce<T> {
    pub tuple: IntegerTuple,
    pub t_squared: T,
}

fn better<T: Field>(a: &BruteForce<T>, b: &BruteForce<T>) -> bool {
    if !T::same_value(a.t_squared, b.t_squared) {
        return a.t_squared < b.t_squared;
    }
    let key = |x: &IntegerTuple| (x.k.abs(), x.s2, x.k < 0, x.l, x.r);
    key(&a.tuple) < key(&b.tuple)
}

/// Exhaustive minimization of `T²` over admissible tuples in `bounds`.
///
/// Ties (equal `T²`) are broken on `(|k|, s2, k < 0, l, r)`, so the
/// nonnegative-`k` member of a `k ↦ −k` pair wins. Work is split over `k`
/// and reduced in a fixed order, so the result does not depend on the number
/// of threads.
pub fn solve_brute_force<T: Field>(
    phases: &TargetPhases<T>,
    bounds: &SearchBounds,
) -> Result<BruteForce<T>, IntegerError> {
    solve_brute_force_filtered(phases, bounds, |_| true)
}

/// [`solve_brute_force`] restricted to tuples accepted by `keep`.
pub fn solve_brute_force_filtered<T, F>(
    phases: &TargetPhases<T>,
    bounds: &SearchBounds,
    keep: F,
) -> Result<BruteForce<T>, IntegerError>
where
    T: Field,
    F: Fn(&IntegerTuple) -> bool + Sync,
{
    let SearchBounds {
        k_max,
        s_max,
        l_max,
        r_max,
    } = *bounds;
    if k_max < 0 || s_max < 0 || l_max < 0 || r_max < 0 {
        return Err(IntegerError::BadBounds(*bounds));
    }
    let per_k: Vec<Option<BruteForce<T>>> = (-k_max..=k_max)
        .into_par_iter()
        .map(|k| {
            let mut best: Option<BruteForce<T>> = None;
            let start = k.rem_euclid(2);
            for s2 in (start..=2 * s_max).step_by(2) {
                for l in -l_max..=l_max {
                    for r in -r_max..=r_max {
                        let tuple = IntegerTuple { k, s2, l, r };
                        if !keep(&tuple) || !admissible_any_order(&tuple, phases) {
                            continue;
                        }
                        let cand = BruteForce {
                            tuple,
                            t_squared: t_squared(&tuple, phases),
                        };
                        if best.as_ref().is_none_or(|b| better(&cand, b)) {
                            best = Some(cand);
                        }
                    }
                }
            }
            best
        })
        .collect();
    per_k
        .into_iter()
        .flatten()
        .reduce(|a, b| if better(&b, &a) { b } else { a })
        .ok_or(IntegerError::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::super::field::Rational;
    use super::*;

    #[test]
    fn closed_form_examples() {
        let cf = solve_closed_form(Rational::new(1, 8)).unwrap();
        assert_eq!(cf.sign, PhaseSign::Negative);
        assert_eq!(cf.tuple, IntegerTuple::new(0, 2, 1, -1).unwrap());
        assert_eq!(cf.t_squared, Rational::new(15, 64));

        let cf = solve_closed_form(0.3).unwrap();
        assert_eq!(cf.sign, PhaseSign::Positive);
        assert_eq!(cf.tuple, IntegerTuple::new(2, 4, 2, -1).unwrap());
        assert!((cf.t_squared - (4.0 / 3.0 - 0.9 - 0.09)).abs() < 1e-15);

        let cf = solve_closed_form(Rational::new(4, 15)).unwrap();
        assert_eq!(cf.tuple.k, 0);
        assert_eq!(cf.t_squared, Rational::new(104, 225));
    }

    #[test]
    fn closed_form_range() {
        assert!(solve_closed_form(0.0).is_err());
        assert!(solve_closed_form(1.0 / 3.0).is_err());
        assert!(solve_closed_form(-0.1).is_err());
    }

    #[test]
    fn brute_force_hadamard() {
        let ph = TargetPhases::new(Rational::new(-1, 8), Rational::new(1, 8)).unwrap();
        let bf = solve_brute_force(&ph, &SearchBounds::default()).unwrap();
        assert_eq!(bf.tuple, IntegerTuple::new(0, 2, 1, -1).unwrap());
        assert_eq!(bf.t_squared, Rational::new(15, 64));
    }

    #[test]
    fn empty_search_is_infeasible() {
        let ph = TargetPhases::antisymmetric(0.1).unwrap();
        let bounds = SearchBounds {
            k_max: 0,
            s_max: 0,
            l_max: 0,
            r_max: 0,
        };
        assert!(matches!(
            solve_brute_force(&ph, &bounds),
            Err(IntegerError::Infeasible)
        ));
    }
}
