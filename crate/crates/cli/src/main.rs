//! `lambdaopt`: time-optimal gate synthesis for three-level Lambda systems.
//!
//! Exit codes: 0 success, 1 malformed input, 2 excluded target,
//! 3 infeasible search, 4 verification failure.

mod trajectory;

use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lambdaopt_core::integer::{
    solve_brute_force, IntegerError, Method, SearchBounds, SolverReport, TargetPhases,
};
use lambdaopt_core::json;
use lambdaopt_core::linalg::{ComplexMatrix, SpecialUnitary};
use lambdaopt_core::orbit::orbit_class;
use lambdaopt_core::synthesis::{
    canonical_angle, synthesize, verify_report, CSign, SynthesisError, SynthesisOptions,
    SynthesisReport, Target,
};

#[derive(Parser, Debug)]
#[command(
    name = "lambdaopt",
    version,
    about = "Time-optimal control synthesis for Lambda-type qutrits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize the optimal control for a gate on the two lowest levels.
    Synth(SynthArgs),
    /// Run the exhaustive integer search for given normalized phases.
    Oracle(OracleArgs),
    /// Re-check a synthesis result JSON.
    Verify(VerifyArgs),
    /// Sample an optimal trajectory to CSV.
    Trajectory(trajectory::TrajectoryArgs),
    /// Orbit-space coordinates of an SU(3) matrix.
    Orbit(OrbitArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct BoundArgs {
    #[arg(long, default_value_t = SearchBounds::default().k_max)]
    k_max: i64,
    #[arg(long, default_value_t = SearchBounds::default().s_max)]
    s_max: i64,
    #[arg(long, default_value_t = SearchBounds::default().l_max)]
    l_max: i64,
    #[arg(long, default_value_t = SearchBounds::default().r_max)]
    r_max: i64,
}

impl From<BoundArgs> for SearchBounds {
    fn from(b: BoundArgs) -> Self {
        SearchBounds {
            k_max: b.k_max,
            s_max: b.s_max,
            l_max: b.l_max,
            r_max: b.r_max,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Closed,
    Brute,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["alpha", "target"]))]
struct SynthArgs {
    /// Eigenphase of the target (radians unless --degrees).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Second eigenphase; defaults to -alpha.
    #[arg(long, allow_hyphen_values = true, requires = "alpha")]
    beta: Option<f64>,
    /// 2x2 unitary target as matrix JSON.
    #[arg(long)]
    target: Option<PathBuf>,
    #[arg(long)]
    degrees: bool,
    #[arg(long, value_enum, default_value = "closed")]
    method: MethodArg,
    /// Sign of the coupling parameter c.
    #[arg(long, value_enum, default_value = "plus")]
    c_sign: SignArg,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha_hat: f64,
    #[arg(long, allow_hyphen_values = true)]
    beta_hat: f64,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Synthesis result JSON.
    #[arg(long)]
    result: PathBuf,
    /// Optional 2x2 target the endpoint must match up to the reported global phase.
    #[arg(long)]
    target: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    /// SU(3) matrix JSON.
    #[arg(long)]
    matrix: PathBuf,
}

/// Error with the exit code it maps to.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Self {
            code: 1,
            msg: msg.into(),
        }
    }
}

fn integer_code(e: &IntegerError) -> u8 {
    match e {
        IntegerError::Infeasible => 3,
        IntegerError::ZeroPhase => 2,
        _ => 1,
    }
}

impl From<SynthesisError> for Failure {
    fn from(e: SynthesisError) -> Self {
        let code = match &e {
            SynthesisError::ExcludedTarget(_) | SynthesisError::OutsideClosedForm { .. } => 2,
            SynthesisError::Integer(ie) => integer_code(ie),
            SynthesisError::NotUnitary { .. }
            | SynthesisError::Linalg(_)
            | SynthesisError::Kp(_)
            | SynthesisError::NonPositiveGamma(_) => 1,
            SynthesisError::InadmissibleTuple { .. }
            | SynthesisError::NoSimilarity(_)
            | SynthesisError::VerificationFailed(_) => 4,
        };
        Self {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<IntegerError> for Failure {
    fn from(e: IntegerError) -> Self {
        Self {
            code: integer_code(&e),
            msg: e.to_string(),
        }
    }
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("malformed JSON in {}: {e}", path.display())))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let text = json::to_string(value).map_err(|e| Failure::input(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn cmd_synth(args: &SynthArgs) -> Result<(), Failure> {
    let target = match (&args.target, args.alpha) {
        (Some(path), _) => Target::Gate(read_json::<ComplexMatrix>(path)?),
        (None, Some(alpha)) => {
            let unit = if args.degrees { TAU / 360.0 } else { 1.0 };
            let alpha = canonical_angle(alpha * unit);
            let beta = args.beta.map_or(-alpha, |b| canonical_angle(b * unit));
            Target::Phases { alpha, beta }
        }
        (None, None) => return Err(Failure::input("one of --alpha or --target is required")),
    };
    let opts = SynthesisOptions {
        method: match args.method {
            MethodArg::Closed => Method::ClosedForm,
            MethodArg::Brute => Method::BruteForce,
        },
        c_sign: match args.c_sign {
            SignArg::Plus => CSign::Plus,
            SignArg::Minus => CSign::Minus,
        },
        bounds: args.bounds.into(),
    };
    let result = synthesize(&target, &opts)?;
    print_json(&result.report())
}

fn cmd_oracle(args: &OracleArgs) -> Result<(), Failure> {
    let phases = TargetPhases::new(args.alpha_hat, args.beta_hat)?;
    let best = solve_brute_force(&phases, &args.bounds.into())?;
    print_json(&SolverReport::new(
        &phases,
        &best.tuple,
        best.t_squared,
        Method::BruteForce,
    ))
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let report: SynthesisReport = read_json(&args.result)?;
    let target = args
        .target
        .as_deref()
        .map(read_json::<ComplexMatrix>)
        .transpose()?;
    let outcome = verify_report(&report, target.as_ref());
    print_json(&outcome)?;
    if outcome.passed() {
        Ok(())
    } else {
        let failed: Vec<_> = outcome
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        Err(Failure {
            code: 4,
            msg: format!("failed checks: {}", failed.join(", ")),
        })
    }
}

fn cmd_orbit(args: &OrbitArgs) -> Result<(), Failure> {
    let m: ComplexMatrix = read_json(&args.matrix)?;
    let x = SpecialUnitary::new(m.clone()).map_err(|e| {
        Failure::input(format!(
            "not special unitary (unitarity residual {:e}): {e}",
            m.unitarity_residual()
        ))
    })?;
    let cls = orbit_class(&x).map_err(|e| Failure::input(e.to_string()))?;
    print_json(&cls)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("LAMBDAOPT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::input(format!(
            "LAMBDAOPT_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::input(e.to_string()))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Synth(a) => cmd_synth(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Trajectory(a) => trajectory::cmd_trajectory(a),
        Command::Orbit(a) => cmd_orbit(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
