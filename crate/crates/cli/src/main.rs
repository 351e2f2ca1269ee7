use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stepgear::validate::ValidationOptions;
use stepgear_cli::{
    emit, export_text, fourier_report, run_validate, sweep, write_csv, Builder, ExportConfig,
    Failure, Mode, SweepConfig, DEFAULT_SHOTS,
};

/// Gearbox step-function circuits: sweeps, Fourier coefficients, self-checks
/// and OpenQASM export.
///
/// Exit status: 0 on success, 1 when validation checks fail, 2 on usage or
/// I/O errors.
#[derive(Debug, Parser)]
#[command(name = "stepgear", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep θ and write theta,omega,analytic,success,ci_halfwidth as CSV.
    Sweep(SweepArgs),
    /// Fourier coefficients of the normalized inverse success probability, as JSON.
    Fourier(FourierArgs),
    /// Run the named self-check suite.
    Validate(ValidateArgs),
    /// Write one builder's circuit as OpenQASM 2.0.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = Builder::Gearbox)]
    builder: Builder,
    #[arg(long, default_value_t = 1)]
    depth: u32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta_min: f64,
    /// Defaults to π/2 (90 with --degrees).
    #[arg(long, allow_negative_numbers = true)]
    theta_max: Option<f64>,
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output rotation of the rescaled plateau; defaults to π/4.
    #[arg(long)]
    kappa: Option<f64>,
    /// Fourier order for --builder fourier.
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// Read every angle flag in degrees.
    #[arg(long)]
    degrees: bool,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FourierArgs {
    #[arg(long, default_value_t = 2)]
    depth: u32,
    #[arg(long, default_value_t = 4)]
    order: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long, default_value_t = 1.0, hide = true)]
    gearbox_angle_scale: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Qasm,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long, value_enum)]
    builder: Builder,
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, default_value_t = 1)]
    depth: u32,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long, default_value_t = 4)]
    order: usize,
    #[arg(long)]
    degrees: bool,
    #[arg(long, value_enum, default_value_t = Format::Qasm)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn angle(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sweep(a) => {
            let config = SweepConfig {
                builder: a.builder,
                depth: a.depth,
                theta_min: angle(a.theta_min, a.degrees),
                theta_max: a.theta_max.map_or(FRAC_PI_2, |t| angle(t, a.degrees)),
                points: a.points,
                mode: a.mode,
                shots: a.shots,
                seed: a.seed,
                kappa: a.kappa.map_or(FRAC_PI_4, |k| angle(k, a.degrees)),
                order: a.order,
            };
            let rows = sweep(&config)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(|e| Failure::Io(format!("encoding CSV: {e}")))?;
            emit(a.out.as_deref(), &buf)
        }
        Command::Fourier(a) => {
            let report = fourier_report(a.depth, a.order)?;
            let mut json =
                serde_json::to_vec_pretty(&report).map_err(|e| Failure::Io(e.to_string()))?;
            json.push(b'\n');
            emit(a.out.as_deref(), &json)
        }
        Command::Validate(a) => {
            let options = ValidationOptions {
                gearbox_angle_scale: a.gearbox_angle_scale,
            };
            run_validate(&options, &mut std::io::stdout().lock()).map(|_| ())
        }
        Command::Export(a) => {
            let Format::Qasm = a.format;
            let config = ExportConfig {
                builder: a.builder,
                depth: a.depth,
                theta: angle(a.theta, a.degrees),
                kappa: a.kappa.map_or(FRAC_PI_4, |k| angle(k, a.degrees)),
                order: a.order,
            };
            emit(a.out.as_deref(), export_text(&config)?.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = std::io::stdout().flush();
            eprintln!("stepgear: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
