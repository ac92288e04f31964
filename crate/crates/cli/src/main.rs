//! `g235`: exact invariants of (2,3,5) distributions from the command line.
//!
//! Exit status: 0 when every requested verdict passes, 1 on a failed
//! verdict, 2 on malformed input, 3 on degenerate geometry (wrong growth
//! vector or a pole at a working point).

mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use g235::io::{load_model, rational_from_json};
use g235::{AdaptedMode, OracleOptions};
use run::{execute, Command, Failure, Settings};

#[derive(Parser, Debug)]
#[command(name = "g235", version, about = "Exact invariants of (2,3,5) distributions")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Model file (JSON, schema g235-model/1).
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Working point, e.g. `0,0,0,1,0` or `1/2,1/3,0,1,0`; repeatable, overrides the model's points.
    #[arg(long, global = true)]
    point: Vec<String>,
    /// Jacobi-curve jet order (default 12, or the model's override).
    #[arg(long, global = true)]
    order: Option<usize>,
    /// How the fifth frame field is formed.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Adapted)]
    mode: Mode,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Sub {
    /// Growth vector at each working point.
    Check,
    /// Adapted frame and structural functions.
    Frame,
    /// Ricci density and fundamental-form density.
    Invariants,
    /// Tangential quartic at each working point.
    Tangential,
    /// Closed-form values side by side with the Jacobi-curve oracle.
    Oracle,
    /// Structure-equation verifier, Cartan-frame identities and the quartic comparison.
    Cartan,
    /// All of the above.
    Report,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Mode {
    Adapted,
    StronglyAdapted,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Format {
    Json,
}

fn parse_point(text: &str) -> Result<Vec<g235::Rational>, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(format!("--point '{text}': expected 5 comma-separated rationals, found {}", parts.len()));
    }
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            rational_from_json(&serde_json::Value::String(p.to_string())).ok_or_else(|| format!("--point '{text}': entry {} ('{p}') is not a rational", i + 1))
        })
        .collect()
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let path = cli.model.as_ref().ok_or_else(|| Failure::Input("--model is required".into()))?;
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))?;
    let mut model = load_model(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if !cli.point.is_empty() {
        model.points = cli.point.iter().map(|p| parse_point(p)).collect::<Result<_, _>>().map_err(Failure::Input)?;
    }
    let defaults = OracleOptions::default();
    let order = cli.order.or(model.orders.oracle).unwrap_or(defaults.order);
    let tau = model.orders.tau.unwrap_or(defaults.tau_order);
    if order < tau + 8 || order < defaults.g_tau_order + 9 {
        return Err(Failure::Input(format!("--order {order} is too small (need at least {})", (tau + 8).max(defaults.g_tau_order + 9))));
    }
    let settings = Settings {
        mode: match cli.mode {
            Mode::Adapted => AdaptedMode::Adapted,
            Mode::StronglyAdapted => AdaptedMode::StronglyAdapted,
        },
        oracle: OracleOptions { order, tau_order: tau, ..defaults },
        timings: cli.timings,
        fingerprint: format!("{:x}", Sha256::digest(&bytes)),
    };
    let cmd = match cli.command {
        Sub::Check => Command::Check,
        Sub::Frame => Command::Frame,
        Sub::Invariants => Command::Invariants,
        Sub::Tangential => Command::Tangential,
        Sub::Oracle => Command::Oracle,
        Sub::Cartan => Command::Cartan,
        Sub::Report => Command::Report,
    };
    let report = execute(cmd, &model, &settings)?;
    let Format::Json = cli.format;
    let mut out = serde_json::to_string_pretty(&report).expect("report serialises");
    out.push('\n');
    Ok((out, report.pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, pass)) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("one or more verdicts failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("input error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Degenerate(m)) => {
            eprintln!("degenerate: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Verdict(m)) => {
            eprintln!("failed: {m}");
            ExitCode::from(1)
        }
    }
}
