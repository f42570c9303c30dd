//! Subcommand implementations. Each writes its report, then returns
//! `Err(Violation)` if a checked claim failed so the exit code is 1.

use std::fmt::Write as _;
use std::path::Path;

use qaccess_core::measure::mutual_information_of;
use qaccess_core::optimizer::{
    optimize_rank1, optimize_trine_with, optimize_von_neumann_with, verify_conjecture, OptimizerConfig,
    VerificationReport,
};
use qaccess_core::poly::{certify_point, summarize, GridSpec};
use qaccess_core::sampling::{random_mixed_pair, random_params, rng_for};
use qaccess_core::stationary::{count_roots_of_f, eval_f, eval_f_derivatives, StationaryParams};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, Output, Search, SweepKind};
use crate::format::fmt17;
use crate::input::{parse_povm, parse_state_pair, read};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, unreadable or invalid input.
    #[error("{0}")]
    Input(String),
    /// A certificate or verification check failed.
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Violation(_) => EXIT_VIOLATION,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Worker pool capped by `QACCESS_THREADS` when set.
fn pool() -> Result<rayon::ThreadPool, CliError> {
    let threads = match std::env::var("QACCESS_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Input(format!("QACCESS_THREADS must be a positive integer, got `{v}`")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(input_err)
}

#[derive(Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<Value>,
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Write `body` to `--out` (plus the config sidecar) or to stdout.
fn emit(output: &Output, command: &Command, body: &str, summary: Option<Value>) -> Result<(), CliError> {
    match &output.out {
        Some(path) => {
            write_file(path, body)?;
            let sidecar = Sidecar { tool: "qaccess", version: env!("CARGO_PKG_VERSION"), config: command, summary };
            let text = serde_json::to_string_pretty(&sidecar).map_err(input_err)? + "\n";
            write_file(Path::new(&format!("{}.config.json", path.display())), &text)
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn json_line(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("report types serialize") + "\n"
}

fn optimizer_config(search: &Search) -> Result<OptimizerConfig, CliError> {
    let cfg = OptimizerConfig {
        seed: search.seed,
        restarts: search.restarts,
        grid_points: search.grid,
        gap_tol: search.tol_gap,
        ..Default::default()
    };
    cfg.validate().map_err(input_err)?;
    Ok(cfg)
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let command = &cli.command;
    match command {
        Command::MutualInfo { input, povm, output } => cmd_mutual_info(command, input, povm, output),
        Command::FCurve { alpha1, xi1, eta1, xi2, eta2, t_min, t_max, samples, output } => {
            let params = StationaryParams::new(*alpha1, *xi1, *eta1, *xi2, *eta2).map_err(input_err)?;
            cmd_f_curve(command, &params, (*t_min, *t_max), *samples, output)
        }
        Command::Verify { input, search, output } => cmd_verify(command, input, search, output),
        Command::Optimize { input, outcomes, search, output } => cmd_optimize(command, input, *outcomes, search, output),
        Command::Certify { grid, output } => cmd_certify(command, *grid, output),
        Command::Sweep { kind, seed, samples, restarts, tol_gap, output } => match kind {
            SweepKind::Roots => cmd_sweep_roots(command, *seed, samples.unwrap_or(10_000), output),
            SweepKind::Conjecture => {
                let search = Search { seed: *seed, restarts: *restarts, grid: 4096, tol_gap: *tol_gap };
                cmd_sweep_conjecture(command, &search, samples.unwrap_or(100), output)
            }
        },
    }
}

fn cmd_mutual_info(command: &Command, input: &Path, povm: &Path, output: &Output) -> Result<(), CliError> {
    let states = parse_state_pair(&read(input)?)?;
    let povm = parse_povm(&read(povm)?)?;
    let bits = mutual_information_of(&states, &povm);
    let body = match output.format {
        Some(Format::Json) => json_line(&json!({ "bits": bits })),
        _ => fmt17(bits) + "\n",
    };
    emit(output, command, &body, None)
}

fn cmd_f_curve(
    command: &Command,
    params: &StationaryParams,
    (t_min, t_max): (f64, f64),
    samples: usize,
    output: &Output,
) -> Result<(), CliError> {
    if samples < 2 {
        return Err(CliError::Input("--samples must be at least 2".into()));
    }
    if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
        return Err(CliError::Input(format!("need finite --t-min < --t-max, got {t_min} and {t_max}")));
    }
    let rows: Vec<[f64; 4]> = (0..samples)
        .map(|k| {
            let t = if k + 1 == samples { t_max } else { t_min + (t_max - t_min) * k as f64 / (samples - 1) as f64 };
            let (f1, f2) = eval_f_derivatives(params, t);
            [t, eval_f(params, t), f1, f2]
        })
        .collect();
    let body = match output.format {
        Some(Format::Json) => rows
            .iter()
            .map(|r| json_line(&json!({ "t": r[0], "f": r[1], "fprime": r[2], "fsecond": r[3] })))
            .collect(),
        _ => {
            let mut s = String::from("t,f,fprime,fsecond\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", fmt17(r[0]), fmt17(r[1]), fmt17(r[2]), fmt17(r[3]));
            }
            s
        }
    };
    emit(output, command, &body, None)
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    #[serde(flatten)]
    report: &'a VerificationReport,
    pass: bool,
    violations: Vec<String>,
}

fn conjecture_csv_row(seed: u64, r: &VerificationReport) -> String {
    format!("{seed},{},{},{}\n", fmt17(r.gap_bits), r.collapsed, fmt17(r.max_residual))
}

const CONJECTURE_HEADER: &str = "seed,gap_bits,collapsed,max_residual\n";

fn cmd_verify(command: &Command, input: &Path, search: &Search, output: &Output) -> Result<(), CliError> {
    let cfg = optimizer_config(search)?;
    let states = parse_state_pair(&read(input)?)?;
    let report = verify_conjecture(&states, &cfg).map_err(input_err)?;
    let violations = report.violations();
    let body = match output.format {
        Some(Format::Csv) => String::from(CONJECTURE_HEADER) + &conjecture_csv_row(search.seed, &report),
        _ => {
            let out = VerifyOutput { report: &report, pass: violations.is_empty(), violations: violations.clone() };
            serde_json::to_string_pretty(&out).map_err(input_err)? + "\n"
        }
    };
    emit(output, command, &body, None)?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violation(violations.join("; ")))
    }
}

fn cmd_optimize(
    command: &Command,
    input: &Path,
    outcomes: usize,
    search: &Search,
    output: &Output,
) -> Result<(), CliError> {
    if !(2..=8).contains(&outcomes) {
        return Err(CliError::Input(format!("--outcomes must be between 2 and 8, got {outcomes}")));
    }
    let cfg = optimizer_config(search)?;
    let states = parse_state_pair(&read(input)?)?;
    let (vn, vn_bits) = optimize_von_neumann_with(&states, cfg.grid_points, cfg.theta_tol);
    let mut report = json!({ "best_vn": { "theta": vn.theta, "bits": vn_bits } });
    let mut best_other = f64::NEG_INFINITY;
    if outcomes >= 3 {
        let (t, bits) = optimize_trine_with(&states, &cfg).map_err(input_err)?;
        report["best_trine"] = json!({ "angles": t.angles, "weights": t.weights, "bits": bits });
        best_other = best_other.max(bits);
    }
    if outcomes >= 4 {
        let (p, bits) = optimize_rank1(&states, outcomes, &cfg).map_err(input_err)?;
        report["best_rank1"] = json!({ "outcomes": outcomes, "kets": p.kets, "bits": bits });
        best_other = best_other.max(bits);
    }
    let gap = best_other - vn_bits;
    report["gap_bits"] = json!(if outcomes >= 3 { gap } else { 0.0 });
    emit(output, command, &(serde_json::to_string_pretty(&report).map_err(input_err)? + "\n"), None)?;
    if outcomes >= 3 && gap > cfg.gap_tol {
        return Err(CliError::Violation(format!("a {outcomes}-outcome measurement beats the orthogonal optimum by {gap:e} bits")));
    }
    Ok(())
}

#[derive(Serialize)]
struct CertificateLine {
    alpha1: f64,
    xi_sq: f64,
    #[serde(rename = "X")]
    x: f64,
    delta: f64,
    root_count: usize,
    pass: bool,
}

fn cmd_certify(command: &Command, grid: usize, output: &Output) -> Result<(), CliError> {
    let spec = GridSpec::with_resolution(grid);
    spec.validate().map_err(input_err)?;
    let points = spec.points();
    let certs = pool()?.install(|| {
        points.par_iter().map(|&(a, s, x)| certify_point(a, s, x)).collect::<Result<Vec<_>, _>>()
    });
    let certs = certs.map_err(|e| CliError::Violation(e.to_string()))?;
    let summary = summarize(&certs);
    let lines = certs.iter().map(|c| CertificateLine {
        alpha1: c.alpha1,
        xi_sq: c.xi_sq,
        x: c.x,
        delta: c.delta_formula,
        root_count: c.root_count,
        pass: c.passed(),
    });
    let body = match output.format {
        Some(Format::Csv) => {
            let mut s = String::from("alpha1,xi_sq,X,delta,root_count,pass\n");
            for l in lines {
                let _ = writeln!(s, "{},{},{},{},{},{}", fmt17(l.alpha1), fmt17(l.xi_sq), fmt17(l.x), fmt17(l.delta), l.root_count, l.pass);
            }
            s
        }
        _ => lines.map(|l| json_line(&l)).collect(),
    };
    let summary_json = serde_json::to_value(&summary).map_err(input_err)?;
    eprintln!("summary: {summary_json}");
    emit(output, command, &body, Some(summary_json))?;
    let failing: Vec<String> = certs
        .iter()
        .filter(|c| !c.passed())
        .take(5)
        .map(|c| format!("(alpha1 {}, xi^2 {}, X {}): {}", c.alpha1, c.xi_sq, c.x, c.reasons.join(", ")))
        .collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("{} of {} points fail, first: {}", summary.failed, summary.points, failing.join("; "))))
    }
}

fn check_samples(samples: usize) -> Result<(), CliError> {
    if samples == 0 {
        return Err(CliError::Input("--samples must be at least 1".into()));
    }
    Ok(())
}

fn cmd_sweep_roots(command: &Command, seed: u64, samples: usize, output: &Output) -> Result<(), CliError> {
    check_samples(samples)?;
    let rows = pool()?.install(|| {
        (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let p = random_params(&mut rng_for(seed, i));
                count_roots_of_f(&p).map(|rc| (i, p, rc.count))
            })
            .collect::<Result<Vec<_>, _>>()
    });
    let rows = rows.map_err(|e| CliError::Violation(e.to_string()))?;
    let mut histogram = [0usize; 8];
    for (_, _, n) in &rows {
        histogram[(*n).min(7)] += 1;
    }
    let max_root_count = rows.iter().map(|r| r.2).max().unwrap_or(0);
    let violations = rows.iter().filter(|r| r.2 > 2).count();
    let body = match output.format {
        Some(Format::Json) => rows
            .iter()
            .map(|(i, p, n)| {
                json_line(&json!({
                    "draw": i, "alpha1": p.alpha1, "xi1": p.xi1, "eta1": p.eta1,
                    "xi2": p.xi2, "eta2": p.eta2, "root_count": n,
                }))
            })
            .collect(),
        _ => {
            let mut s = String::from("draw,alpha1,xi1,eta1,xi2,eta2,root_count\n");
            for (i, p, n) in &rows {
                let _ = writeln!(s, "{i},{},{},{},{},{},{n}", fmt17(p.alpha1), fmt17(p.xi1), fmt17(p.eta1), fmt17(p.xi2), fmt17(p.eta2));
            }
            s
        }
    };
    let summary = json!({
        "draws": samples, "max_root_count": max_root_count,
        "root_count_histogram": histogram, "violations": violations,
    });
    eprintln!("summary: {summary}");
    emit(output, command, &body, Some(summary))?;
    if violations > 0 {
        return Err(CliError::Violation(format!("{violations} draws have more than two roots")));
    }
    Ok(())
}

fn cmd_sweep_conjecture(command: &Command, search: &Search, samples: usize, output: &Output) -> Result<(), CliError> {
    check_samples(samples)?;
    let cfg = optimizer_config(search)?;
    let reports = pool()?.install(|| {
        (0..samples as u64)
            .into_par_iter()
            .map(|i| verify_conjecture(&random_mixed_pair(&mut rng_for(search.seed, i)), &cfg).map(|r| (i, r)))
            .collect::<Result<Vec<_>, _>>()
    });
    let reports = reports.map_err(|e| CliError::Violation(e.to_string()))?;
    let body = match output.format {
        Some(Format::Json) => reports
            .iter()
            .map(|(i, r)| {
                json_line(&json!({
                    "seed": i, "gap_bits": r.gap_bits, "collapsed": r.collapsed, "max_residual": r.max_residual,
                }))
            })
            .collect(),
        _ => {
            let mut s = String::from(CONJECTURE_HEADER);
            for (i, r) in &reports {
                s += &conjecture_csv_row(*i, r);
            }
            s
        }
    };
    let failing: Vec<u64> = reports.iter().filter(|(_, r)| !r.passed()).map(|(i, _)| *i).collect();
    let max_gap = reports.iter().map(|(_, r)| r.gap_bits).fold(f64::NEG_INFINITY, f64::max);
    let max_residual = reports.iter().map(|(_, r)| r.max_residual).fold(0.0, f64::max);
    let summary = json!({
        "pairs": samples, "max_gap_bits": max_gap, "max_residual": max_residual, "failing": failing,
    });
    eprintln!("summary: {summary}");
    emit(output, command, &body, Some(summary))?;
    if failing.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("{} of {samples} pairs violate the orthogonal-optimum check", failing.len())))
    }
}
