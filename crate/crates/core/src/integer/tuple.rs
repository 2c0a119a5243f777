//! Candidate tuples, the objective `T²` and the admissibility constraint.

use super::field::Field;
use super::IntegerError;

/// Normalized target eigenphases `α̂ = α/2π`, `β̂ = β/2π` in `(−1/2, 1/2]`, both nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetPhases<T = f64> {
    pub alpha_hat: T,
    pub beta_hat: T,
}

impl<T: Field> TargetPhases<T> {
    pub fn new(alpha_hat: T, beta_hat: T) -> Result<Self, IntegerError> {
        let half = T::ratio(1, 2);
        for (name, v) in [("alpha_hat", alpha_hat), ("beta_hat", beta_hat)] {
            if !(v > -half && v <= half) {
                return Err(IntegerError::PhaseOutOfRange(format!(
                    "{name} = {} is outside (-1/2, 1/2]",
                    v.to_f64()
                )));
            }
            if v == T::zero() {
                return Err(IntegerError::ZeroPhase);
            }
        }
        Ok(Self {
            alpha_hat,
            beta_hat,
        })
    }

    /// `β̂ = −α̂`, the case of a special unitary target.
    pub fn antisymmetric(alpha_hat: T) -> Result<Self, IntegerError> {
        Self::new(alpha_hat, -alpha_hat)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.alpha_hat + self.beta_hat == T::zero()
    }

    pub fn phi(&self, l: i64) -> T {
        self.alpha_hat + T::from_i64(l)
    }

    pub fn psi(&self, r: i64) -> T {
        self.beta_hat + T::from_i64(r)
    }

    pub fn to_f64(&self) -> TargetPhases<f64> {
        TargetPhases {
            alpha_hat: self.alpha_hat.to_f64(),
            beta_hat: self.beta_hat.to_f64(),
        }
    }
}

/// Candidate `(k, s, l, r)` with `s` stored doubled so parity is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerTuple {
    pub k: i64,
    pub s2: i64,
    pub l: i64,
    pub r: i64,
}

impl IntegerTuple {
    pub fn new(k: i64, s2: i64, l: i64, r: i64) -> Result<Self, IntegerError> {
        if s2 < 0 || (s2 - k).rem_euclid(2) != 0 {
            return Err(IntegerError::Parity { k, s2 });
        }
        Ok(Self { k, s2, l, r })
    }

    /// `m = s − k/2`.
    pub fn m(&self) -> i64 {
        (self.s2 - self.k) / 2
    }

    pub fn s<T: Field>(&self) -> T {
        T::ratio(self.s2, 2)
    }

    pub fn region(&self) -> Option<Region> {
        region_of(self.k, self.s2)
    }

    /// `6·{−k/3, k/6 − s, k/6 + s}`, sorted; these are the roots of both
    /// admissibility cubics.
    pub fn scaled_roots(&self) -> [i64; 3] {
        let mut roots = [-2 * self.k, self.k - 3 * self.s2, self.k + 3 * self.s2];
        roots.sort_unstable();
        roots
    }
}

/// Regions of the `(k, s)` half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `0 < s < −k/2`
    A,
    /// `0 < s < k/2`
    B,
    /// `s > |k|/2`
    C,
}

pub fn region_of(k: i64, s2: i64) -> Option<Region> {
    if s2 > k.abs() {
        Some(Region::C)
    } else if s2 > 0 && s2 < -k {
        Some(Region::A)
    } else if s2 > 0 && s2 < k {
        Some(Region::B)
    } else {
        None
    }
}

/// `T² = k²/12 + s² − (φ̂² + ψ̂² + φ̂ψ̂)` with `φ̂ = α̂ + l`, `ψ̂ = β̂ + r`.
pub fn t_squared<T: Field>(tuple: &IntegerTuple, phases: &TargetPhases<T>) -> T {
    let k = T::from_i64(tuple.k);
    let s: T = tuple.s();
    let phi = phases.phi(tuple.l);
    let psi = phases.psi(tuple.r);
    k * k / T::from_i64(12) + s * s - (phi * phi + psi * psi + phi * psi)
}

/// `(x + k/3)(x − k/6 − s)(x − k/6 + s)`.
pub fn cubic<T: Field>(tuple: &IntegerTuple, x: T) -> T {
    let k6 = T::ratio(tuple.k, 6);
    let s: T = tuple.s();
    (x + T::ratio(tuple.k, 3)) * (x - k6 - s) * (x - k6 + s)
}

/// Both strict cubic inequalities, for `φ̂_l > ψ̂_r`.
///
/// Fails with [`IntegerError::PhiPsiOrder`] unless `φ̂_l > ψ̂_r`.
pub fn admissible<T: Field>(
    tuple: &IntegerTuple,
    phases: &TargetPhases<T>,
) -> Result<bool, IntegerError> {
    let phi = phases.phi(tuple.l);
    let psi = phases.psi(tuple.r);
    if phi <= psi {
        return Err(IntegerError::PhiPsiOrder {
            phi: phi.to_f64(),
            psi: psi.to_f64(),
        });
    }
    Ok(cubic_pair_holds(tuple, phi, psi))
}

/// Admissibility with the larger of `φ̂_l`, `ψ̂_r` playing the role of `φ̂`;
/// equal values are never admissible.
pub fn admissible_any_order<T: Field>(tuple: &IntegerTuple, phases: &TargetPhases<T>) -> bool {
    let phi = phases.phi(tuple.l);
    let psi = phases.psi(tuple.r);
    if phi > psi {
        cubic_pair_holds(tuple, phi, psi)
    } else if psi > phi {
        cubic_pair_holds(tuple, psi, phi)
    } else {
        false
    }
}

fn cubic_pair_holds<T: Field>(tuple: &IntegerTuple, hi: T, lo: T) -> bool {
    let eps = T::margin();
    cubic(tuple, hi) < -eps && cubic(tuple, lo) > eps
}

/// Which of the two region involutions to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionMap {
    /// `(k, s) ↦ (−k/2 − 3s, −k/4 + s/2)`, exchanging regions A and C.
    AtoC,
    /// `(k, s) ↦ (−k/2 + 3s, k/4 + s/2)`, exchanging regions B and C.
    BtoC,
}

/// Applies a region involution to `(k, s)`; `(l, r)` are kept.
pub fn map_region(tuple: &IntegerTuple, which: RegionMap) -> Result<IntegerTuple, IntegerError> {
    let (k, s2) = (tuple.k, tuple.s2);
    let region = tuple.region();
    let (ok, k_new, s2_new) = match which {
        RegionMap::AtoC => (
            matches!(region, Some(Region::A | Region::C)),
            -(k + 3 * s2) / 2,
            (s2 - k) / 2,
        ),
        RegionMap::BtoC => (
            matches!(region, Some(Region::B | Region::C)),
            (3 * s2 - k) / 2,
            (k + s2) / 2,
        ),
    };
    if !ok {
        return Err(IntegerError::WrongRegion {
            k,
            s2,
            expected: match which {
                RegionMap::AtoC => "A or C",
                RegionMap::BtoC => "B or C",
            },
        });
    }
    IntegerTuple::new(k_new, s2_new, tuple.l, tuple.r)
}

/// `(k, s, l, r) ↦ (−k, s, −r, −l)`, valid when `β̂ = −α̂`.
pub fn negate_k<T: Field>(
    tuple: &IntegerTuple,
    phases: &TargetPhases<T>,
) -> Result<IntegerTuple, IntegerError> {
    if !phases.is_antisymmetric() {
        return Err(IntegerError::RequiresAntisymmetricPhases);
    }
    Ok(IntegerTuple {
        k: -tuple.k,
        s2: tuple.s2,
        l: -tuple.r,
        r: -tuple.l,
    })
}

/// Whether two tuples describe the same candidate up to a permutation of the
/// cubic roots (which covers `(k, m) ↔ (k, −k−m)` and both region maps) and,
/// for antisymmetric phases, the sign flip of [`negate_k`].
pub fn equivalent(a: &IntegerTuple, b: &IntegerTuple, antisymmetric: bool) -> bool {
    let same = a.scaled_roots() == b.scaled_roots() && (a.l, a.r) == (b.l, b.r);
    if same || !antisymmetric {
        return same;
    }
    let flipped = IntegerTuple {
        k: -b.k,
        s2: b.s2,
        l: -b.r,
        r: -b.l,
    };
    a.scaled_roots() == flipped.scaled_roots() && (a.l, a.r) == (flipped.l, flipped.r)
}
