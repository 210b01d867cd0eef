mod commands;
mod io;

use std::io::{BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grassgeo::{Curvature, GrassmannSpace};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use commands::*;

/// Geometry of complex Grassmannians and their noncompact duals.
#[derive(Parser, Debug)]
#[command(name = "grassgeo", version)]
struct Cli {
    /// Space: N M [compact|noncompact] (compact by default).
    #[arg(long, global = true, num_args = 3, value_names = ["N", "M", "KIND"])]
    space: Option<Vec<String>>,
    /// Numerical tolerance (cut locus and rank tests).
    #[arg(long, global = true, env = "GRASSGEO_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Seed for random inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Cross-check against an independent oracle where one exists.
    #[arg(long, global = true)]
    verify: bool,
    /// Read one JSON argument object per line from stdin.
    #[arg(long, global = true)]
    batch: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exponential map at the origin.
    Exp(ExpArgs),
    /// Inverse of the exponential map on the chart.
    Log(LogArgs),
    /// Closed-form exponential against RK4 integration of the geodesic equation.
    GeodesicCheck(GeodesicCheckArgs),
    /// Normalized coherent-state overlap.
    Overlap(PairArgs),
    /// Geodesic distance.
    Distance(PairArgs),
    /// Calabi diastasis.
    Diastasis(PairArgs),
    /// Cayley distance.
    Cayley(PairArgs),
    /// Conjugate times along the geodesic with Cartan direction h.
    ConjugateTimes(ConjugateTimesArgs),
    /// Scan of the normalized smallest singular value of d exp along h.
    ConjugateScan(ConjugateScanArgs),
    /// Cut-locus membership with respect to the origin.
    CutTest(FrameArgs),
    /// Schubert incidence dimensions and cell membership.
    Schubert(SchubertArgs),
    /// Conjugate-locus strata membership.
    Strata(StrataArgs),
    /// Isoclinic test for two planes.
    Isoclinic(IsoclinicArgs),
    /// Plücker coordinates.
    Plucker(FrameArgs),
    /// Height function and its chart gradient.
    Energy(EnergyArgs),
    /// Critical points of the height function.
    CriticalPoints(WeightsArgs),
    /// Topological counts that all equal the Euler characteristic.
    CharNumbers(WeightsArgs),
}

const KINDS: [&str; 5] = ["compact", "noncompact", "+1", "1", "-1"];

/// Insert the default kind after `--space N M` when it is omitted.
fn normalize_args(args: impl IntoIterator<Item = String>) -> Vec<String> {
    let args: Vec<String> = args.into_iter().collect();
    let mut out = Vec::with_capacity(args.len() + 1);
    let mut k = 0;
    while k < args.len() {
        out.push(args[k].clone());
        k += 1;
        if out.last().is_some_and(|a| a == "--space") && k + 2 <= args.len() {
            out.extend_from_slice(&args[k..k + 2]);
            k += 2;
            if !args.get(k).is_some_and(|w| KINDS.contains(&w.as_str())) {
                out.push("compact".into());
            }
        }
    }
    out
}

fn parse_space(words: &[String]) -> Result<GrassmannSpace, String> {
    let dim = |w: &String| w.parse::<usize>().map_err(|_| format!("invalid dimension {w:?} in --space"));
    let (n, m) = (dim(&words[0])?, dim(&words[1])?);
    let curvature = words[2].parse::<Curvature>().map_err(|e| e.to_string())?;
    GrassmannSpace::new(n, m, curvature).map_err(|e| e.to_string())
}

enum Outcome {
    Text(String),
    Failed(String, grassgeo::Error),
}

fn error_value(e: &grassgeo::Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

fn line(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize") + "\n"
}

fn run_one(command: &Command, cfg: &RunConfig, output: Output, index: u64) -> Result<String, CliError> {
    let value = match command {
        Command::ConjugateScan(a) => {
            let (space, rows) = conjugate_scan(a, cfg)?;
            return Ok(match output {
                Output::Csv => scan_csv(&rows),
                Output::Json => line(&scan_json(&space, a, &rows)),
            });
        }
        Command::Exp(a) => exp(a, cfg, index)?,
        Command::Log(a) => log(a, cfg, index)?,
        Command::GeodesicCheck(a) => geodesic_check(a, cfg, index)?,
        Command::Overlap(a) => overlap(a, cfg, index)?,
        Command::Distance(a) => distance_cmd(a, cfg, index)?,
        Command::Diastasis(a) => diastasis_cmd(a, cfg, index)?,
        Command::Cayley(a) => cayley(a, cfg, index)?,
        Command::ConjugateTimes(a) => conjugate_times(a, cfg)?,
        Command::CutTest(a) => cut_test(a, cfg, index)?,
        Command::Schubert(a) => schubert(a, cfg, index)?,
        Command::Strata(a) => strata(a, cfg, index)?,
        Command::Isoclinic(a) => isoclinic(a, cfg, index)?,
        Command::Plucker(a) => plucker(a, cfg, index)?,
        Command::Energy(a) => energy_cmd(a, cfg, index)?,
        Command::CriticalPoints(a) => critical(a, cfg)?,
        Command::CharNumbers(a) => char_numbers(a, cfg)?,
    };
    if output == Output::Csv {
        return Err(CliError::Usage("--output csv is only available for conjugate-scan".into()));
    }
    Ok(line(&value))
}

fn parse_line<T: DeserializeOwned>(text: &str, lineno: usize, wrap: fn(T) -> Command) -> Result<Command, String> {
    serde_json::from_str::<T>(text)
        .map(wrap)
        .map_err(|e| io::describe_json_error(&format!("batch line {lineno}"), &e))
}

/// Reinterpret a JSON line as arguments for the same subcommand.
fn batch_command(template: &Command, text: &str, lineno: usize) -> Result<Command, String> {
    match template {
        Command::Exp(_) => parse_line(text, lineno, Command::Exp),
        Command::Log(_) => parse_line(text, lineno, Command::Log),
        Command::GeodesicCheck(_) => parse_line(text, lineno, Command::GeodesicCheck),
        Command::Overlap(_) => parse_line(text, lineno, Command::Overlap),
        Command::Distance(_) => parse_line(text, lineno, Command::Distance),
        Command::Diastasis(_) => parse_line(text, lineno, Command::Diastasis),
        Command::Cayley(_) => parse_line(text, lineno, Command::Cayley),
        Command::ConjugateTimes(_) => parse_line(text, lineno, Command::ConjugateTimes),
        Command::ConjugateScan(_) => parse_line(text, lineno, Command::ConjugateScan),
        Command::CutTest(_) => parse_line(text, lineno, Command::CutTest),
        Command::Schubert(_) => parse_line(text, lineno, Command::Schubert),
        Command::Strata(_) => parse_line(text, lineno, Command::Strata),
        Command::Isoclinic(_) => parse_line(text, lineno, Command::Isoclinic),
        Command::Plucker(_) => parse_line(text, lineno, Command::Plucker),
        Command::Energy(_) => parse_line(text, lineno, Command::Energy),
        Command::CriticalPoints(_) => parse_line(text, lineno, Command::CriticalPoints),
        Command::CharNumbers(_) => parse_line(text, lineno, Command::CharNumbers),
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("grassgeo: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(normalize_args(std::env::args()));
    let space = match cli.space.as_deref().map(parse_space).transpose() {
        Ok(s) => s,
        Err(e) => return usage(&e),
    };
    let cfg = RunConfig { space, tol: cli.tol, seed: cli.seed, verify: cli.verify };

    let jobs: Vec<(u64, Command)> = if cli.batch {
        let stdin = std::io::stdin();
        let mut jobs = Vec::new();
        for (k, text) in stdin.lock().lines().enumerate() {
            let text = match text {
                Ok(t) => t,
                Err(e) => return usage(&format!("cannot read stdin: {e}")),
            };
            if text.trim().is_empty() {
                continue;
            }
            match batch_command(&cli.command, &text, k + 1) {
                Ok(c) => jobs.push((k as u64, c)),
                Err(e) => return usage(&e),
            }
        }
        jobs
    } else {
        vec![(0, cli.command)]
    };

    let results: Vec<Result<Outcome, String>> = jobs
        .par_iter()
        .map(|(index, command)| match run_one(command, &cfg, cli.output, *index) {
            Ok(text) => Ok(Outcome::Text(text)),
            Err(CliError::Domain(e)) => Ok(Outcome::Failed(line(&error_value(&e)), e)),
            Err(CliError::Usage(msg)) => Err(msg),
        })
        .collect();

    let mut stdout = std::io::stdout().lock();
    let mut failed = false;
    for r in results {
        match r {
            Ok(Outcome::Text(t)) => {
                let _ = stdout.write_all(t.as_bytes());
            }
            Ok(Outcome::Failed(t, e)) => {
                failed = true;
                let _ = stdout.write_all(t.as_bytes());
                eprintln!("grassgeo: {e}");
            }
            Err(msg) => return usage(&msg),
        }
    }
    let _ = stdout.flush();
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
