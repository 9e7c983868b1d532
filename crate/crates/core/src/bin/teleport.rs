use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use teleport_core::cavity::{DecoherenceLaw, InputQubit};
use teleport_core::harness::{
    error_budget, finite_shot_tomography, fit_couplings, rate_estimate, six_state_benchmark, sweep, to_json,
    write_csv, ExperimentConfig, SweepParam,
};
use teleport_core::protocol::run_protocol;
use teleport_core::SimError;

#[derive(Parser)]
#[command(name = "teleport", version, about = "Two-node cavity-QED teleportation simulator")]
struct Cli {
    /// TOML configuration; the shipped defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Finite-shot tomography with this many shots per basis (bench6).
    #[arg(long, global = true)]
    shots: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    decoherence_law: Option<LawArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LawArg {
    Exp,
    Gauss,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    MeanPhoton,
    Delay,
}

#[derive(Subcommand)]
enum Command {
    /// One protocol run with full branch detail.
    Run {
        /// Input state label (up_z, down_z, up_x, down_x, up_y, down_y).
        #[arg(long, default_value = "up_x")]
        state: String,
    },
    /// Six-state benchmark.
    Bench6,
    /// Fidelity scan over mean photon number or delay.
    Sweep {
        #[arg(long, value_enum)]
        param: ParamArg,
        /// Comma-separated grid overriding the configured one.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
    },
    /// Fidelity gain from idealizing each imperfection.
    Budget,
    /// Herald probability and teleportation rate.
    Rate,
    /// Fit both input-coupling fractions to the reflectivity targets.
    FitCoupling,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

fn emit_error(kind: &str, message: String) -> ExitCode {
    let obj = ErrorObject {
        error: ErrorBody { kind, message },
    };
    eprintln!("{}", serde_json::to_string(&obj).unwrap_or_else(|_| "{\"error\":{}}".into()));
    ExitCode::from(2)
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, SimError> {
    Ok(match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json<T: Serialize + ?Sized>(value: &T, out: &Option<PathBuf>) -> Result<(), SimError> {
    let mut w = sink(out)?;
    writeln!(w, "{}", to_json(value)?)?;
    Ok(())
}

fn emit<T: Serialize>(records: &[T], format: Format, out: &Option<PathBuf>) -> Result<(), SimError> {
    match format {
        Format::Json => emit_json(records, out),
        Format::Csv => write_csv(records, sink(out)?),
    }
}

fn execute(cli: &Cli) -> Result<(), SimError> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(law) = cli.decoherence_law {
        cfg.protocol.decoherence_law = match law {
            LawArg::Exp => DecoherenceLaw::Exponential,
            LawArg::Gauss => DecoherenceLaw::Gaussian,
        };
    }
    if cli.shots.is_some() {
        cfg.experiment.shots = cli.shots;
    }
    if let Some(seed) = cli.seed {
        cfg.experiment.seed = seed;
    }
    cfg.validate()?;
    let protocol = &cfg.protocol;

    match &cli.command {
        Command::Run { state } => {
            let q = InputQubit::by_label(state)
                .ok_or_else(|| SimError::Config(format!("unknown state label '{state}'")))?;
            let result = run_protocol(&protocol.with_input(q))?;
            #[derive(Serialize)]
            struct RunOutput<'a> {
                fidelity: Option<f64>,
                rate_hz: f64,
                #[serde(flatten)]
                result: &'a teleport_core::protocol::TeleportResult,
            }
            emit_json(
                &RunOutput {
                    fidelity: result.fidelity(),
                    rate_hz: protocol.repetition_rate_hz * result.herald_probability,
                    result: &result,
                },
                &cli.out,
            )
        }
        Command::Bench6 => match cfg.experiment.shots {
            Some(shots) => emit(&finite_shot_tomography(protocol, shots, cfg.experiment.seed)?, cli.format, &cli.out),
            None => {
                let bench = six_state_benchmark(protocol)?;
                match cli.format {
                    Format::Json => emit_json(&bench, &cli.out),
                    Format::Csv => emit(&bench.rows, cli.format, &cli.out),
                }
            }
        },
        Command::Sweep { param, grid } => {
            let (param, default_grid) = match param {
                ParamArg::MeanPhoton => (SweepParam::MeanPhoton, &cfg.experiment.mean_photon_grid),
                ParamArg::Delay => (SweepParam::Delay, &cfg.experiment.delay_grid_us),
            };
            let grid = grid.as_ref().unwrap_or(default_grid);
            emit(&sweep(protocol, param, grid)?, cli.format, &cli.out)
        }
        Command::Budget => emit(&error_budget(protocol)?, cli.format, &cli.out),
        Command::Rate => emit(&[rate_estimate(protocol)?], cli.format, &cli.out),
        Command::FitCoupling => {
            let (_, fits) = fit_couplings(protocol, cfg.experiment.reflectivity_targets)?;
            emit(&fits, cli.format, &cli.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            return emit_error("usage", e.to_string());
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => emit_error(e.kind(), e.to_string()),
    }
}
