use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use monodromy_lab::config::parse_tolerance;
use monodromy_lab::{emit_report, render, run_experiment, ExperimentConfig, LabResult, ReportFormat, EXPERIMENTS};

#[derive(Parser)]
#[command(name = "monodromy-lab", about = "Numerical verification of monodromy identities for Hadamard products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered experiments.
    List,
    /// Run one experiment and emit its report.
    Run {
        /// Experiment name (may come from --config instead).
        experiment: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Truncation M of coefficient series.
        #[arg(long)]
        coeffs: Option<usize>,
        /// Tolerance override, repeatable.
        #[arg(long = "tol", value_name = "KEY=VAL", value_parser = parse_tolerance)]
        tol: Vec<(String, f64)>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
    },
}

fn run(cli: Cli) -> LabResult<bool> {
    match cli.command {
        Command::List => {
            let width = EXPERIMENTS.iter().map(|e| e.name.len()).max().unwrap_or(0);
            for e in EXPERIMENTS {
                println!("{:<width$}  {}", e.name, e.summary);
            }
            Ok(true)
        }
        Command::Run { experiment, config, seed, samples, coeffs, tol, out, format } => {
            let mut cfg = match &config {
                Some(path) => ExperimentConfig::from_file(path)?,
                None => ExperimentConfig::default(),
            };
            if let Some(e) = experiment {
                cfg.experiment = e;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if samples.is_some() {
                cfg.samples = samples;
            }
            if let Some(m) = coeffs {
                cfg.coeffs = m;
            }
            cfg.tolerances.extend(tol);
            if out.is_some() {
                cfg.out = out;
            }
            if let Some(f) = format {
                cfg.format = f;
            }
            let report = run_experiment(&cfg)?;
            match &cfg.out {
                Some(path) => {
                    emit_report(&report, cfg.format, path)?;
                    eprintln!("{}: {} ({})", report.experiment, if report.pass { "PASS" } else { "FAIL" }, path.display());
                }
                None => print!("{}", render(&report, cfg.format)?),
            }
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
