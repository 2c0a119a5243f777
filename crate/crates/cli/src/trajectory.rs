//! `trajectory` subcommand: samples `U(t)`, the control components and the orbit class.

use std::f64::consts::SQRT_2;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use lambdaopt_core::json::sig17;
use lambdaopt_core::kp::{control_components, lab_frame_controls, ControlBasis};
use lambdaopt_core::linalg::{ComplexMatrix, SkewHermitianMatrix};
use lambdaopt_core::orbit::{orbit_class, OrbitClass};
use lambdaopt_core::synthesis::SynthesisReport;
use rayon::prelude::*;

use crate::{read_json, Failure};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Interaction,
    Lab,
}

#[derive(Args, Debug)]
pub struct TrajectoryArgs {
    /// Synthesis result JSON.
    #[arg(long)]
    params: PathBuf,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[arg(long, value_enum, default_value = "interaction")]
    frame: Frame,
    /// Diagonal drift Hamiltonian as skew-Hermitian matrix JSON (lab frame only).
    #[arg(long)]
    drift: Option<PathBuf>,
    /// Control bound; amplitudes scale by gamma/sqrt(2) and time by sqrt(2)/gamma.
    #[arg(long, default_value_t = SQRT_2)]
    gamma: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn header(lab: bool) -> String {
    let mut cols = vec!["t".to_string()];
    for i in 1..=3 {
        for j in 1..=3 {
            cols.push(format!("U{i}{j}_re"));
            cols.push(format!("U{i}{j}_im"));
        }
    }
    cols.extend((1..=4).map(|k| format!("v{k}")));
    if lab {
        cols.extend((1..=4).map(|k| format!("u{k}")));
    }
    cols.push("sum_v2".into());
    cols.extend(OrbitClass::CSV_COLUMNS.iter().map(|s| s.to_string()));
    cols.join(",")
}

pub fn cmd_trajectory(args: &TrajectoryArgs) -> Result<(), Failure> {
    if args.samples < 2 {
        return Err(Failure::input("--samples must be at least 2"));
    }
    if !(args.gamma > 0.0 && args.gamma.is_finite()) {
        return Err(Failure::input(format!(
            "--gamma must be positive, got {}",
            args.gamma
        )));
    }
    let lab = args.frame == Frame::Lab;
    let drift = match (lab, &args.drift) {
        (true, Some(path)) => {
            let m: ComplexMatrix = read_json(path)?;
            Some(SkewHermitianMatrix::new(m).map_err(|e| Failure::input(format!("drift: {e}")))?)
        }
        (true, None) => return Err(Failure::input("--frame lab requires --drift")),
        (false, _) => None,
    };
    let report: SynthesisReport = read_json(&args.params)?;
    let (a, p) = report.operators()?;
    let f = args.gamma / SQRT_2;
    let (a, p) = (a.scale(f), p.scale(f));
    let t_end = report.solver.t / f;
    let basis = ControlBasis::new(3);
    let last = args.samples - 1;

    let rows: Vec<String> = (0..args.samples)
        .into_par_iter()
        .map(|i| -> Result<String, Failure> {
            let t = if i == last {
                t_end
            } else {
                t_end * i as f64 / last as f64
            };
            let u = a.exp(t).compose(&p.sub(&a).exp(t));
            let mut fields = vec![sig17(t)];
            for z in u.inner().rows().iter().flatten() {
                fields.push(sig17(z.re));
                fields.push(sig17(z.im));
            }
            let v =
                control_components(&a, &p, t, &basis).map_err(|e| Failure::input(e.to_string()))?;
            fields.extend(v.iter().map(|&x| sig17(x)));
            if let Some(d) = &drift {
                let uc = lab_frame_controls(&v, d, t, &basis)
                    .map_err(|e| Failure::input(format!("drift: {e}")))?;
                fields.extend(uc.iter().map(|&x| sig17(x)));
            }
            fields.push(sig17(v.iter().map(|x| x * x).sum()));
            let cls = orbit_class(&u).map_err(|e| Failure {
                code: 4,
                msg: format!("orbit class at t = {t}: {e}"),
            })?;
            fields.extend(cls.csv_fields());
            Ok(fields.join(","))
        })
        .collect::<Result<_, _>>()?;

    let mut out = header(lab);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    match &args.output {
        Some(path) => fs::write(path, out)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(out.as_bytes())
            .map_err(|e| Failure::input(e.to_string())),
    }
}
