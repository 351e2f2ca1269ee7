//! Sweeps, coefficient export, validation and QASM export behind the
//! `stepgear` binary.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use stepgear::arith::{self, build_composition, build_subtraction, AmplitudeLoader};
use stepgear::circuit::{export_qasm, Circuit, ToffoliVariant};
use stepgear::fourier::{
    compile_series, gearbox_target_series, normalization_constant, to_cos_squared,
    CosSquaredSeries, FourierSeries,
};
use stepgear::gearbox::{
    self, gearbox_experiment, relu_experiment, rescaled_plateau_experiment, GearboxSpec,
    PostSelectedCircuit,
};
use stepgear::sim::{post_select, post_select_shots, run_circuit, sample_shots_with};
use stepgear::validate::{run_validation, ValidationOptions, ValidationReport};

/// Confidence multiplier for shot-mode half-widths.
pub const CONFIDENCE_Z: f64 = 5.0;

pub const DEFAULT_SHOTS: u64 = 100_000;

pub const CSV_HEADER: [&str; 5] = ["theta", "omega", "analytic", "success", "ci_halfwidth"];

/// Process outcome other than success, with its exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    ChecksFailed(usize),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::ChecksFailed(_) => 1,
            Failure::Usage(_) | Failure::Io(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Io(m) => write!(f, "{m}"),
            Failure::ChecksFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<stepgear::Error> for Failure {
    fn from(e: stepgear::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    Gearbox,
    RescaledPlateau,
    Relu,
    Subtraction,
    Composition,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Mode {
    #[default]
    Exact,
    Shots,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub builder: Builder,
    pub depth: u32,
    pub theta_min: f64,
    pub theta_max: f64,
    pub points: usize,
    pub mode: Mode,
    pub shots: u64,
    pub seed: u64,
    /// Output rotation of the rescaled plateau.
    pub kappa: f64,
    /// Fourier order of the `fourier` builder.
    pub order: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            builder: Builder::Gearbox,
            depth: 1,
            theta_min: 0.0,
            theta_max: std::f64::consts::FRAC_PI_2,
            points: 101,
            mode: Mode::Exact,
            shots: DEFAULT_SHOTS,
            seed: 0,
            kappa: FRAC_PI_4,
            order: 4,
        }
    }
}

impl SweepConfig {
    pub fn check(&self) -> Result<(), Failure> {
        if !(self.theta_min.is_finite() && self.theta_max.is_finite()) {
            return Err(Failure::Usage("theta bounds must be finite".into()));
        }
        if self.points < 2 {
            return Err(Failure::Usage(format!(
                "--points must be at least 2, got {}",
                self.points
            )));
        }
        if self.theta_min >= self.theta_max {
            return Err(Failure::Usage(format!(
                "--theta-min ({}) must be below --theta-max ({})",
                self.theta_min, self.theta_max
            )));
        }
        if self.mode == Mode::Shots && self.shots == 0 {
            return Err(Failure::Usage("--shots must be at least 1".into()));
        }
        if self.depth == 0 {
            return Err(Failure::Usage("--depth must be at least 1".into()));
        }
        Ok(())
    }

    pub fn thetas(&self) -> Vec<f64> {
        let step = (self.theta_max - self.theta_min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == self.points - 1 {
                    self.theta_max
                } else {
                    self.theta_min + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub omega: f64,
    pub analytic: f64,
    pub success: f64,
    /// Shot mode only.
    pub ci_halfwidth: Option<f64>,
}

/// Values loaded by the arithmetic builders at angle `θ`.
fn arith_loaders(theta: f64) -> Result<(AmplitudeLoader, AmplitudeLoader), Failure> {
    let (s, c) = theta.sin_cos();
    Ok((AmplitudeLoader::new(s * s)?, AmplitudeLoader::new(c * c)?))
}

/// Normalized `D_d` series in `cos²` form.
fn fourier_target(depth: u32, order: usize) -> Result<CosSquaredSeries, Failure> {
    Ok(to_cos_squared(&gearbox_target_series(depth, order)?))
}

/// One sweep point: the circuit with its heralding pattern and the
/// closed-form value of `Ω`.
fn point(
    config: &SweepConfig,
    series: Option<&CosSquaredSeries>,
    theta: f64,
) -> Result<(PostSelectedCircuit, f64), Failure> {
    Ok(match config.builder {
        Builder::Gearbox => {
            let spec = GearboxSpec::new(config.depth, theta)?;
            (
                gearbox_experiment(&spec)?,
                gearbox::analytics(&spec).s_composed,
            )
        }
        Builder::RescaledPlateau => (
            rescaled_plateau_experiment(theta, config.kappa)?,
            gearbox::rescaled_plateau_law(theta, config.kappa),
        ),
        Builder::Relu => (
            relu_experiment(theta, ToffoliVariant::Native)?,
            gearbox::relu_law(theta),
        ),
        Builder::Subtraction => {
            let (g, h) = arith_loaders(theta)?;
            let unheralded = PostSelectedCircuit {
                circuit: build_subtraction(g, h)?,
                kept: vec![],
                target: arith::TARGET,
            };
            (unheralded, (g.value() + 1.0 - h.value()) / 2.0)
        }
        Builder::Composition => {
            let (g, h) = arith_loaders(theta)?;
            let unheralded = PostSelectedCircuit {
                circuit: build_composition(g, h, g, ToffoliVariant::Native)?,
                kept: vec![],
                target: arith::composition::R,
            };
            (unheralded, g.value() * (g.value() - h.value()) / 4.0 + 0.5)
        }
        Builder::Fourier => {
            let series = series.expect("series prepared for the fourier builder");
            let compiled = compile_series(series, theta)?;
            let analytic = compiled.readout.invert(series.eval(theta));
            let unheralded = PostSelectedCircuit {
                circuit: compiled.circuit,
                kept: vec![],
                target: compiled.readout_qubit,
            };
            (unheralded, analytic)
        }
    })
}

fn evaluate(
    config: &SweepConfig,
    series: Option<&CosSquaredSeries>,
    index: usize,
    theta: f64,
) -> Result<SweepRow, Failure> {
    let (experiment, analytic) = point(config, series, theta)?;
    let state = run_circuit(&experiment.circuit, None)?;
    let zeros = vec![false; experiment.kept.len()];
    match config.mode {
        Mode::Exact => {
            let r = post_select(&state, &experiment.kept, &zeros, experiment.target)?;
            Ok(SweepRow {
                theta,
                omega: r.omega,
                analytic,
                success: r.success_probability,
                ci_halfwidth: None,
            })
        }
        Mode::Shots => {
            let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
            rng.set_stream(index as u64);
            let records =
                sample_shots_with(&state, &experiment.measured(), config.shots, &mut rng)?;
            let positions: Vec<usize> = (0..experiment.kept.len()).collect();
            let r =
                post_select_shots(&records, &positions, &zeros, positions.len()).map_err(|_| {
                    Failure::Usage(format!(
                        "no shot survived post-selection at theta = {theta}; raise --shots"
                    ))
                })?;
            let kept = r.shots_kept.unwrap_or(0) as f64;
            Ok(SweepRow {
                theta,
                omega: r.omega,
                analytic,
                success: r.success_probability,
                ci_halfwidth: Some(CONFIDENCE_Z * (r.omega * (1.0 - r.omega) / kept).sqrt()),
            })
        }
    }
}

/// Evaluates every grid point in parallel; rows come back in `θ` order and
/// do not depend on the thread count.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, Failure> {
    config.check()?;
    let series = match config.builder {
        Builder::Fourier => Some(fourier_target(config.depth, config.order)?),
        _ => None,
    };
    config
        .thetas()
        .into_par_iter()
        .enumerate()
        .map(|(i, theta)| evaluate(config, series.as_ref(), i, theta))
        .collect()
}

/// Shortest round-trip decimal, switching to exponent form for very small or
/// very large magnitudes.
fn number(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let ci = r.ci_halfwidth.map(number).unwrap_or_default();
        w.write_record([
            number(r.theta),
            number(r.omega),
            number(r.analytic),
            number(r.success),
            ci,
        ])?;
    }
    w.flush()
}

/// JSON document written by `stepgear fourier`.
#[derive(Debug, Clone, Serialize)]
pub struct FourierReport {
    pub depth: u32,
    pub order: usize,
    /// Factor `2^(1 − 2^d)` applied to `D_d` before fitting.
    pub normalization_constant: f64,
    pub target: String,
    pub series: FourierSeries,
    pub cos_squared: CosSquaredSeries,
    /// `a'_0, a'_1, …, a'_N`.
    pub leading_terms: Vec<f64>,
}

pub fn fourier_report(depth: u32, order: usize) -> Result<FourierReport, Failure> {
    if depth == 0 {
        return Err(Failure::Usage("--depth must be at least 1".into()));
    }
    let series = gearbox_target_series(depth, order)?;
    let cos_squared = to_cos_squared(&series);
    Ok(FourierReport {
        depth,
        order,
        normalization_constant: normalization_constant(depth),
        target: format!("normalization_constant * D_{depth}(theta), D_d = 1 / success probability"),
        leading_terms: cos_squared.leading_cos_terms(),
        series,
        cos_squared,
    })
}

pub fn run_validate(
    options: &ValidationOptions,
    out: &mut impl Write,
) -> Result<ValidationReport, Failure> {
    let report = run_validation(options);
    let io = |e: io::Error| Failure::Io(format!("writing report: {e}"));
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{status}  {:<30} {:>9.1} ms  {}",
            c.name, c.millis, c.detail
        )
        .map_err(io)?;
    }
    writeln!(
        out,
        "{}/{} checks passed",
        report.passed_count(),
        report.checks.len()
    )
    .map_err(io)?;
    match report.checks.len() - report.passed_count() {
        0 => Ok(report),
        n => Err(Failure::ChecksFailed(n)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExportConfig {
    pub builder: Builder,
    pub depth: u32,
    pub theta: f64,
    pub kappa: f64,
    pub order: usize,
}

pub fn export_circuit(config: &ExportConfig) -> Result<Circuit, Failure> {
    let sweep = SweepConfig {
        builder: config.builder,
        depth: config.depth,
        kappa: config.kappa,
        order: config.order,
        ..SweepConfig::default()
    };
    let series = match config.builder {
        Builder::Fourier => Some(fourier_target(config.depth, config.order)?),
        _ => None,
    };
    if !config.theta.is_finite() {
        return Err(Failure::Usage("--theta must be finite".into()));
    }
    Ok(point(&sweep, series.as_ref(), config.theta)?.0.circuit)
}

pub fn export_text(config: &ExportConfig) -> Result<String, Failure> {
    Ok(export_qasm(&export_circuit(config)?))
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so a failed write leaves nothing behind.
pub fn write_atomically(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    let ctx = |e: io::Error| Failure::Io(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(ctx)?;
    tmp.write_all(contents).map_err(ctx)?;
    tmp.persist(path).map_err(|e| ctx(e.error))?;
    Ok(())
}

/// Sends output to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, contents: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => write_atomically(p, contents),
        None => io::stdout()
            .write_all(contents)
            .map_err(|e| Failure::Io(format!("writing to stdout: {e}"))),
    }
}
