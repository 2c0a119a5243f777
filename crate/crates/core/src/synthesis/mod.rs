//! Gate synthesis: from target eigenphases to the optimal extremal `(A, P, t)`.
//!
//! The integer solution fixes `(a, b, c, t)`, the geodesic
//! `U(t) = e^{At}e^{(−A+P)t}` is evaluated and checked, and a similarity
//! `diag(1, K₂)` moves the reached lower block onto the requested gate.

mod endpoint;
mod params;
mod pipeline;

use std::f64::consts::{PI, TAU};

pub use endpoint::{
    conjugation_correction, geodesic_endpoint, Correction, Endpoint, ScalarOutcome,
};
pub use params::{build_ap, recover_params, CSign, ControlParams};
pub use pipeline::{
    rescale_bound, synthesize, verify_report, Check, Rescaled, SynthesisOptions, SynthesisReport,
    SynthesisResult, Target, VerifyReport,
};

use crate::integer::IntegerError;
use crate::kp::KpError;
use crate::linalg::LinalgError;

/// Scalar test on `e^{(−A+P)t}`.
pub const TOL_SCALAR: f64 = 1e-9;
/// Spectrum and endpoint comparisons.
pub const TOL_SPECTRUM: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Integer(#[from] IntegerError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Kp(#[from] KpError),
    #[error("inadmissible tuple (c^2 = {c_squared}): {detail}")]
    InadmissibleTuple { c_squared: f64, detail: String },
    #[error("no similarity between reached block and target: {0}")]
    NoSimilarity(String),
    #[error("excluded target: {0}")]
    ExcludedTarget(String),
    #[error("|alpha_hat| = {alpha_hat} is outside (0, 1/3); use the brute-force method")]
    OutsideClosedForm { alpha_hat: f64 },
    #[error("{what} matrix is not unitary (residual {residual:e})")]
    NotUnitary { what: &'static str, residual: f64 },
    #[error("gamma must be positive, got {0}")]
    NonPositiveGamma(f64),
    #[error("endpoint check failed: {0}")]
    VerificationFailed(String),
}

/// Reduces an angle to `(−π, π]`.
pub fn canonical_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}
