//! The integer program fixing the optimal time.
//!
//! With target eigenphases `α̂, β̂` the normalized time `T = t/2π` of a
//! candidate extremal is
//! `T² = k²/12 + s² − (φ̂² + ψ̂² + φ̂ψ̂)`, `φ̂ = α̂ + l`, `ψ̂ = β̂ + r`,
//! and the candidate is realizable exactly when
//! `(φ̂ + k/3)(φ̂ − k/6 − s)(φ̂ − k/6 + s) < 0 < (ψ̂ + k/3)(ψ̂ − k/6 − s)(ψ̂ − k/6 + s)`.
//! Everything here is generic over [`Field`] so results can be checked in
//! exact rational arithmetic.

mod bounds;
mod field;
mod solve;
mod tuple;

use serde::{Deserialize, Serialize};

pub use bounds::{
    box_bounds, corner_max_f, exhaustive_box_max, f_value, region_c_bound, BoxBounds,
};
pub use field::{li, si, Field, Rational};
pub use solve::{
    solve_brute_force, solve_brute_force_filtered, solve_closed_form, BruteForce, ClosedForm,
    PhaseSign, SearchBounds,
};
pub use tuple::{
    admissible, admissible_any_order, cubic, equivalent, map_region, negate_k, region_of,
    t_squared, IntegerTuple, Region, RegionMap, TargetPhases,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntegerError {
    #[error("phase out of range: {0}")]
    PhaseOutOfRange(String),
    #[error("target phases must both be nonzero")]
    ZeroPhase,
    #[error("s2 = {s2} must be nonnegative with the parity of k = {k}")]
    Parity { k: i64, s2: i64 },
    #[error("phi_hat = {phi} must exceed psi_hat = {psi}")]
    PhiPsiOrder { phi: f64, psi: f64 },
    #[error("(k, s2) = ({k}, {s2}) is not in region {expected}")]
    WrongRegion {
        k: i64,
        s2: i64,
        expected: &'static str,
    },
    #[error("operation requires beta_hat = -alpha_hat")]
    RequiresAntisymmetricPhases,
    #[error("residue {0} is not in 0..6")]
    BadResidue(u8),
    #[error("search bounds must be nonnegative: {0:?}")]
    BadBounds(SearchBounds),
    #[error("no admissible tuple within the search bounds")]
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    BruteForce,
}

/// Solver output in its JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub k: i64,
    pub s2: i64,
    pub l: i64,
    pub r: i64,
    pub m: i64,
    #[serde(rename = "T_squared")]
    pub t_squared: f64,
    #[serde(rename = "T")]
    pub t_norm: f64,
    pub t: f64,
    pub method: Method,
}

impl SolverReport {
    pub fn new<T: Field>(
        phases: &TargetPhases<T>,
        tuple: &IntegerTuple,
        t_squared: T,
        method: Method,
    ) -> Self {
        let t2 = t_squared.to_f64();
        let t_norm = t2.sqrt();
        Self {
            alpha_hat: phases.alpha_hat.to_f64(),
            beta_hat: phases.beta_hat.to_f64(),
            k: tuple.k,
            s2: tuple.s2,
            l: tuple.l,
            r: tuple.r,
            m: tuple.m(),
            t_squared: t2,
            t_norm,
            t: std::f64::consts::TAU * t_norm,
            method,
        }
    }
}
