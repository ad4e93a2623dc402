//! Command-line front end.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 solver error,
//! 4 verification failure. Errors are reported on standard error as a JSON
//! object `{"error": NAME, "message": TEXT}`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::control::{invert, ControlQuery, TargetField};
use crate::error::Error;
use crate::fd::{verify, ConvergenceReport};
use crate::general::{AnchoredCoefficients, SolutionCoefficients};
use crate::io::{load_material, load_problem, load_schedule, write_profile_csv, write_sweep_csv, InputError};
use crate::model::ReducedParams;
use crate::panel::{solve_panel, BoundaryData, Datum, LowerFace, PanelSolution};
use crate::quasistatic::{slowness_check, sweep, RateLimits};

#[derive(Debug, Parser)]
#[command(name = "pyroplate", version, about = "Closed-form boundary control of pyroelectric 6mm plates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a problem; write the profile CSV and a coefficient report.
    Solve(SolveArgs),
    /// Compute the free datum that hits a target value.
    Control(ControlArgs),
    /// Compare the closed form with finite differences on n/2 and n intervals.
    Verify(VerifyArgs),
    /// Solve along a schedule of boundary data.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Material JSON file.
    #[arg(long)]
    pub material: PathBuf,
    /// Problem JSON file.
    #[arg(long)]
    pub problem: PathBuf,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Number of profile samples, faces included.
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(2..))]
    pub samples: u32,
    /// Coefficient report path. Defaults to the CSV path with a .json
    /// extension when --out is given.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ControlArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Largest accepted |achieved - target| / max(1, |target|).
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Fine grid intervals (even, at least 16); the coarse grid has half.
    #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u32).range(16..))]
    pub grid: u32,
    /// Largest accepted normalized max error on the fine grid.
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Schedule JSON file: array of {tau, data}.
    #[arg(long)]
    pub schedule: PathBuf,
    /// Number of uniformly spaced instants; the schedule's own instants when omitted.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub times: Option<u32>,
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(2..))]
    pub samples: u32,
    /// Warn on standard error when any datum changes faster than this per unit tau.
    #[arg(long)]
    pub max_rate: Option<f64>,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub name: &'static str,
    pub message: String,
}

impl Failure {
    pub fn to_json(&self) -> String {
        serde_json::json!({"error": self.name, "message": self.message}).to_string()
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Read(m) => Failure { code: 2, name: "InputError", message: m },
            InputError::Schema(m) => Failure { code: 2, name: "SchemaError", message: m },
            InputError::Domain(e) => e.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 3,
            name: e.name(),
            message: e.to_string(),
        }
    }
}

fn write_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        name: "OutputError",
        message: format!("{}: {e}", path.display()),
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| write_failure(p, e)),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| write_failure(Path::new("<stdout>"), e)),
    }
}

fn to_json<T: Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(v).expect("report serializes");
    s.push(b'\n');
    s
}

#[derive(Serialize)]
struct BoundaryReport {
    max_relative: f64,
    relative: [f64; 10],
}

#[derive(Serialize)]
struct SolveReport<'a> {
    problem: &'static str,
    material: &'a str,
    h: f64,
    data: BoundaryData,
    reduced: ReducedParams,
    coefficients: SolutionCoefficients,
    anchored: AnchoredCoefficients,
    lower_face: LowerFace,
    boundary_check: BoundaryReport,
    warnings: Vec<String>,
}

fn warnings(sol: &PanelSolution) -> Vec<String> {
    let mut w = Vec::new();
    if !sol.params.stable {
        w.push(format!(
            "exponential rate a = {} is not positive; fields grow away from the upper face",
            sol.params.rate
        ));
    }
    w
}

fn solve_report(sol: &PanelSolution) -> Result<Vec<u8>, Failure> {
    let bc = sol.boundary_check();
    Ok(to_json(&SolveReport {
        problem: sol.spec.label(),
        material: &sol.spec.material.name,
        h: sol.spec.h,
        data: sol.spec.data,
        reduced: sol.params,
        coefficients: sol.coefficients()?,
        anchored: sol.anchored,
        lower_face: sol.lower_face_summary(),
        boundary_check: BoundaryReport {
            max_relative: bc.max_relative(),
            relative: bc.relative_errors(),
        },
        warnings: warnings(sol),
    }))
}

fn run_solve(a: &SolveArgs) -> Result<(), Failure> {
    let material = load_material(&a.inputs.material)?;
    let spec = load_problem(&a.inputs.problem)?.spec(material)?;
    let sol = solve_panel(&spec)?;
    let mut csv = Vec::new();
    write_profile_csv(&mut csv, &sol.profile(a.samples as usize)?)
        .map_err(|e| write_failure(Path::new("<csv>"), e))?;
    emit(a.inputs.out.as_deref(), &csv)?;
    let report_path = a
        .report
        .clone()
        .or_else(|| a.inputs.out.as_ref().map(|p| p.with_extension("json")));
    if let Some(p) = report_path {
        if Some(&p) == a.inputs.out.as_ref() {
            return Err(Failure {
                code: 2,
                name: "InputError",
                message: "report path would overwrite the CSV output; pass --report".into(),
            });
        }
        emit(Some(&p), &solve_report(&sol)?)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ControlReport {
    problem: &'static str,
    free: Datum,
    target: TargetField,
    x: f64,
    value: f64,
    datum_value: f64,
    sensitivity: f64,
    baseline: f64,
    achieved: f64,
    residual: f64,
    tol: f64,
    pass: bool,
    data: BoundaryData,
}

fn run_control(a: &ControlArgs) -> Result<(), Failure> {
    let material = load_material(&a.inputs.material)?;
    let file = load_problem(&a.inputs.problem)?;
    let req = file
        .control
        .ok_or_else(|| InputError::Schema("problem file has no \"control\" object".into()))?;
    let spec = file.spec(material)?;
    let out = invert(&ControlQuery {
        spec,
        free: req.free,
        target: req.target,
        x_target: req.x,
        value: req.value,
    })?;
    let pass = out.residual <= a.tol;
    emit(
        a.inputs.out.as_deref(),
        &to_json(&ControlReport {
            problem: out.solution.spec.label(),
            free: req.free,
            target: req.target,
            x: req.x,
            value: req.value,
            datum_value: out.datum_value,
            sensitivity: out.sensitivity,
            baseline: out.baseline,
            achieved: out.achieved,
            residual: out.residual,
            tol: a.tol,
            pass,
            data: out.solution.spec.data,
        }),
    )?;
    if pass {
        Ok(())
    } else {
        Err(Failure {
            code: 4,
            name: "VerificationFailure",
            message: format!("control residual {} exceeds {}", out.residual, a.tol),
        })
    }
}

#[derive(Serialize)]
struct VerifyReport {
    grid: [usize; 2],
    tol: f64,
    pass: bool,
    #[serde(flatten)]
    report: ConvergenceReport,
}

fn run_verify(a: &VerifyArgs) -> Result<(), Failure> {
    let material = load_material(&a.inputs.material)?;
    let spec = load_problem(&a.inputs.problem)?.spec(material)?;
    let n = a.grid as usize;
    let report = verify(&spec, n)?;
    let err = report.fine.max_relative;
    let pass = err <= a.tol;
    emit(
        a.inputs.out.as_deref(),
        &to_json(&VerifyReport {
            grid: [n / 2, n],
            tol: a.tol,
            pass,
            report,
        }),
    )?;
    if pass {
        Ok(())
    } else {
        Err(Failure {
            code: 4,
            name: "VerificationFailure",
            message: format!("max error {err} on {n} intervals exceeds {}", a.tol),
        })
    }
}

fn run_sweep(a: &SweepArgs) -> Result<(), Failure> {
    let material = load_material(&a.inputs.material)?;
    let template = load_problem(&a.inputs.problem)?.template(material)?;
    let sched = load_schedule(&a.schedule)?;
    if sched.variant() != template.variant {
        return Err(Error::InvalidInput("schedule data do not match the problem variant".into()).into());
    }
    let times: Vec<f64> = match a.times {
        None => sched.samples().iter().map(|s| s.tau).collect(),
        Some(1) => vec![sched.span().0],
        Some(n) => {
            let (t0, t1) = sched.span();
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        t1
                    } else {
                        t0 + (t1 - t0) * i as f64 / (n - 1) as f64
                    }
                })
                .collect()
        }
    };
    if let Some(limit) = a.max_rate {
        for f in slowness_check(&sched, &RateLimits::uniform(limit)).flags {
            eprintln!(
                "warning: {} changes at rate {} > {} in schedule interval {}",
                f.datum.name(),
                f.rate,
                f.limit,
                f.interval
            );
        }
    }
    let rows = sweep(&template, &sched, &times)?
        .into_iter()
        .map(|(tau, sol)| Ok((tau, sol.profile(a.samples as usize)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut csv = Vec::new();
    write_sweep_csv(&mut csv, &rows).map_err(|e| write_failure(Path::new("<csv>"), e))?;
    emit(a.inputs.out.as_deref(), &csv)
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Control(a) => run_control(a),
        Command::Verify(a) => {
            if a.grid % 2 != 0 {
                return Err(Failure {
                    code: 2,
                    name: "InputError",
                    message: format!("--grid must be even, got {}", a.grid),
                });
            }
            run_verify(a)
        }
        Command::Sweep(a) => run_sweep(a),
    }
}
