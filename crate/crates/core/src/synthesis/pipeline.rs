//! The end-to-end pipeline, its JSON report and an independent re-check.

use std::f64::consts::{SQRT_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::integer::{
    admissible_any_order, solve_brute_force, solve_closed_form, IntegerTuple, Method, PhaseSign,
    SearchBounds, SolverReport, TargetPhases,
};
use crate::linalg::{unitary_eigen, ComplexMatrix, SkewHermitianMatrix, SpecialUnitary};

use super::endpoint::{conjugation_correction, geodesic_endpoint, ScalarOutcome};
use super::params::{build_ap, recover_params, CSign, ControlParams};
use super::{canonical_angle, SynthesisError, TOL_SCALAR, TOL_SPECTRUM};

/// Gate to synthesize on the two lowest levels.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    /// A `2×2` unitary.
    Gate(ComplexMatrix),
    /// Eigenphases in radians; the gate is `diag(e^{iα}, e^{iβ})`.
    Phases { alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisOptions {
    pub method: Method,
    pub c_sign: CSign,
    pub bounds: SearchBounds,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            method: Method::ClosedForm,
            c_sign: CSign::Plus,
            bounds: SearchBounds::default(),
        }
    }
}

/// Full pipeline state.
///
/// `a_op`, `p_op` are already conjugated by `conj`, so
/// `endpoint = e^{a_op·t}e^{(−a_op+p_op)t}` has lower block `e^{i·global_phase}·target`.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub params: ControlParams,
    pub tuple: IntegerTuple,
    pub phases: TargetPhases,
    pub t_squared: f64,
    pub method: Method,
    pub a_op: SkewHermitianMatrix,
    pub p_op: SkewHermitianMatrix,
    pub endpoint: SpecialUnitary,
    pub conj: SpecialUnitary,
    pub scalar_phase: f64,
    pub global_phase: f64,
    pub target: ComplexMatrix,
}

impl SynthesisResult {
    pub fn report(&self) -> SynthesisReport {
        SynthesisReport {
            solver: SolverReport::new(&self.phases, &self.tuple, self.t_squared, self.method),
            a: self.params.a,
            b: self.params.b,
            c: self.params.c,
            scalar_phase: self.scalar_phase,
            conj: self.conj.inner().clone(),
            global_phase: self.global_phase,
        }
    }
}

/// JSON form: the solver report plus the extremal parameters and the correction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisReport {
    #[serde(flatten)]
    pub solver: SolverReport,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub scalar_phase: f64,
    pub conj: ComplexMatrix,
    pub global_phase: f64,
}

impl SynthesisReport {
    pub fn params(&self) -> ControlParams {
        ControlParams {
            a: self.a,
            b: self.b,
            c: self.c,
            t: self.solver.t,
            t_norm: self.solver.t_norm,
        }
    }

    /// `(A', P')` rebuilt from `(a, b, c)` and `conj`.
    pub fn operators(&self) -> Result<(SkewHermitianMatrix, SkewHermitianMatrix), SynthesisError> {
        let (a, p) = build_ap(&self.params());
        if self.conj.n() != 3 {
            return Err(SynthesisError::VerificationFailed(format!(
                "conj must be 3x3, got {}x{}",
                self.conj.n(),
                self.conj.n()
            )));
        }
        Ok((a.conjugate_by(&self.conj), p.conjugate_by(&self.conj)))
    }
}

fn unit(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

fn near(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

/// Runs solver, parameter recovery, endpoint evaluation and conjugation correction.
pub fn synthesize(
    target: &Target,
    options: &SynthesisOptions,
) -> Result<SynthesisResult, SynthesisError> {
    let gate = match target {
        Target::Gate(m) => {
            if m.n() != 2 {
                return Err(SynthesisError::VerificationFailed(format!(
                    "target must be 2x2, got {}x{}",
                    m.n(),
                    m.n()
                )));
            }
            let residual = m.unitarity_residual();
            if residual > TOL_SPECTRUM {
                return Err(SynthesisError::NotUnitary {
                    what: "target",
                    residual,
                });
            }
            m.clone()
        }
        Target::Phases { alpha, beta } => {
            ComplexMatrix::from_diagonal(&[unit(*alpha), unit(*beta)])
        }
    };

    // `normalized = e^{−iδ}·gate` is what the extremal must reach up to its scalar factor
    let (phases, tuple, t_squared, normalized, delta) = match options.method {
        Method::ClosedForm => {
            let half_det = gate.det().arg() / 2.0;
            let su = gate.scale(unit(-half_det));
            let (eig, _) = unitary_eigen(&su)?;
            let alpha_hat = eig[0].abs() / TAU;
            if alpha_hat < 1e-12 {
                return Err(SynthesisError::ExcludedTarget(
                    "target is a multiple of the identity".into(),
                ));
            }
            if (alpha_hat - 1.0 / 3.0).abs() < 1e-12 {
                return Err(SynthesisError::ExcludedTarget(
                    "|alpha_hat| = 1/3 has no closed-form optimum".into(),
                ));
            }
            if alpha_hat > 1.0 / 3.0 {
                return Err(SynthesisError::OutsideClosedForm { alpha_hat });
            }
            let cf = solve_closed_form(alpha_hat)?;
            let signed = match cf.sign {
                PhaseSign::Positive => alpha_hat,
                PhaseSign::Negative => -alpha_hat,
            };
            let phases = TargetPhases::antisymmetric(signed)?;
            (phases, cf.tuple, cf.t_squared, su, half_det)
        }
        Method::BruteForce => {
            let (eig, _) = unitary_eigen(&gate)?;
            let (hi, lo) = if eig[0] >= eig[1] {
                (eig[0], eig[1])
            } else {
                (eig[1], eig[0])
            };
            let (alpha_hat, beta_hat) = (canonical_angle(hi) / TAU, canonical_angle(lo) / TAU);
            if alpha_hat.abs() < 1e-12 || beta_hat.abs() < 1e-12 {
                return Err(SynthesisError::ExcludedTarget(
                    "target has eigenvalue 1".into(),
                ));
            }
            let phases = TargetPhases::new(alpha_hat, beta_hat)?;
            let bf = solve_brute_force(&phases, &options.bounds)?;
            (phases, bf.tuple, bf.t_squared, gate.clone(), 0.0)
        }
    };

    let params = recover_params(&tuple, &phases, options.c_sign)?;
    let (a, p) = build_ap(&params);
    let end = geodesic_endpoint(&a, &p, params.t);
    let ScalarOutcome::Scalar { phase, .. } = end.scalar else {
        return Err(SynthesisError::VerificationFailed(format!(
            "e^((-A+P)t) is not scalar: {:?}",
            end.scalar
        )));
    };
    let block = end.u.inner().principal_block(1, 2);
    let corr = conjugation_correction(&block, &normalized)?;
    let conj_m = ComplexMatrix::direct_sum(&ComplexMatrix::identity(1), corr.k2.inner());
    let conj = SpecialUnitary::new(conj_m.clone())?;
    let a_op = a.conjugate_by(&conj_m);
    let p_op = p.conjugate_by(&conj_m);
    let endpoint = SpecialUnitary::new(end.u.inner().conjugate_by(&conj_m))?;
    let global_phase = canonical_angle(corr.common_phase - delta);

    let reached = endpoint.inner().principal_block(1, 2);
    let miss = reached.max_abs_diff(&gate.scale(unit(global_phase)));
    if miss > TOL_SPECTRUM {
        return Err(SynthesisError::VerificationFailed(format!(
            "corrected endpoint misses target by {miss:e}"
        )));
    }
    Ok(SynthesisResult {
        params,
        tuple,
        phases,
        t_squared,
        method: options.method,
        a_op,
        p_op,
        endpoint,
        conj,
        scalar_phase: phase,
        global_phase,
        target: gate,
    })
}

/// One line of a [`VerifyReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }
}

/// Re-derives everything in a report from its tuple and phases and re-evaluates the endpoint.
///
/// With `target` given, also checks that the endpoint's lower block is
/// `e^{i·global_phase}·target`.
pub fn verify_report(report: &SynthesisReport, target: Option<&ComplexMatrix>) -> VerifyReport {
    let mut out = VerifyReport { checks: Vec::new() };
    let s = &report.solver;
    let tuple = IntegerTuple::new(s.k, s.s2, s.l, s.r);
    let phases = TargetPhases::new(s.alpha_hat, s.beta_hat);
    let (tuple, phases) = match (tuple, phases) {
        (Ok(t), Ok(p)) => (t, p),
        (t, p) => {
            out.push("input", false, format!("tuple {t:?}, phases {p:?}"));
            return out;
        }
    };
    out.push(
        "admissible",
        admissible_any_order(&tuple, &phases),
        format!("({}, {}, {}, {})", s.k, s.s2, s.l, s.r),
    );
    let sign = if report.c < 0.0 {
        CSign::Minus
    } else {
        CSign::Plus
    };
    match recover_params(&tuple, &phases, sign) {
        Ok(p) => {
            let scale = |x: f64| 1e-10 * x.abs().max(1.0);
            let ok = near(p.a, report.a, scale(p.a))
                && near(p.b, report.b, scale(p.b))
                && near(p.c, report.c, scale(p.c))
                && near(p.t, s.t, scale(p.t))
                && near(p.t_norm * p.t_norm, s.t_squared, scale(s.t_squared));
            out.push(
                "parameters",
                ok,
                format!("recovered a={} b={} c={} t={}", p.a, p.b, p.c, p.t),
            );
        }
        Err(e) => out.push("parameters", false, e.to_string()),
    }
    let conj_ok = SpecialUnitary::with_tol(report.conj.clone(), TOL_SPECTRUM).is_ok()
        && report.conj.is_block_diagonal_1(TOL_SPECTRUM)
        && (report.conj[(0, 0)] - 1.0).norm() <= TOL_SPECTRUM;
    out.push("conj", conj_ok, "diag(1, K2) with K2 in SU(2)".into());

    let (a, p) = match report.operators() {
        Ok(ops) => ops,
        Err(e) => {
            out.push("operators", false, e.to_string());
            return out;
        }
    };
    let end = geodesic_endpoint(&a, &p, s.t);
    match end.scalar {
        ScalarOutcome::Scalar { phase, k, m } => {
            let d = (unit(phase) - unit(report.scalar_phase)).norm();
            out.push(
                "scalar",
                d <= TOL_SCALAR,
                format!("e^((-A+P)t) = e^(i{phase}) on lattice (k, m) = ({k}, {m})"),
            );
        }
        ScalarOutcome::NonScalar { deviation } => {
            out.push("scalar", false, format!("deviation {deviation:e}"))
        }
    }
    let block = a.exp(s.t).into_inner().principal_block(1, 2);
    let spectrum = match unitary_eigen(&block) {
        Ok((ph, _)) => {
            let want = [unit(TAU * s.alpha_hat), unit(TAU * s.beta_hat)];
            let got = [unit(ph[0]), unit(ph[1])];
            [[0, 1], [1, 0]].iter().any(|&[i, j]| {
                let g = want[i] / got[0];
                (want[j] - g * got[1]).norm() <= TOL_SPECTRUM
            })
        }
        Err(_) => false,
    };
    out.push(
        "spectrum",
        spectrum,
        "lower block of e^(At) has eigenvalues e^(i alpha), e^(i beta) up to a common phase".into(),
    );
    if let Some(tg) = target {
        let reached = end.u.inner().principal_block(1, 2);
        let miss = if tg.n() == 2 {
            reached.max_abs_diff(&tg.scale(unit(report.global_phase)))
        } else {
            f64::INFINITY
        };
        out.push(
            "target",
            miss <= TOL_SPECTRUM,
            format!("max entry deviation {miss:e}"),
        );
    }
    out
}

/// Operators and duration for a control bound `‖u‖ ≤ γ` instead of `√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rescaled {
    pub gamma: f64,
    pub t: f64,
    pub a_op: SkewHermitianMatrix,
    pub p_op: SkewHermitianMatrix,
}

/// Scales `A`, `P` by `γ/√2` and time by `√2/γ`; the endpoint is unchanged.
pub fn rescale_bound(result: &SynthesisResult, gamma: f64) -> Result<Rescaled, SynthesisError> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(SynthesisError::NonPositiveGamma(gamma));
    }
    let f = gamma / SQRT_2;
    Ok(Rescaled {
        gamma,
        t: result.params.t / f,
        a_op: result.a_op.scale(f),
        p_op: result.p_op.scale(f),
    })
}
