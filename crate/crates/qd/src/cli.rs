//! Command execution behind the `qd` binary.
//!
//! A [`RunConfig`] is a complete, flag-shaped description of one run; [`run`]
//! validates it, computes the requested report, and writes CSV or JSON to a
//! file or stdout. Rendering is deterministic: floats are emitted with 17
//! significant digits (`{:.16e}` in CSV; shortest-round-trip in JSON), rows
//! follow fixed orders, so identical configs produce byte-identical output.
//!
//! Exit-code policy, mirrored by the binary: anything traceable to the
//! user's configuration (inconsistent flags, labels outside the configured
//! basis, oversized evolution spaces) is [`CliError::Config`] → exit 2;
//! failures of computation or output writing are `Compute`/`Io` → exit 1.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basis::{BasisLabel, DimRange, EnergyConvention, QdBasis};
use crate::dynamics::{evolve_guarded, hopping_interaction, Trajectory, DEFAULT_DIM_GUARD};
use crate::error::QdError;
use crate::oscillator::{level_degeneracy, oscillator_hamiltonian, EnergyLevel};
use crate::state::StateVector;
use crate::symmetry::{symmetry_report, SymmetryReport};
use crate::thermo::{dim_vs_energy_curve, thermal_point, ThermalCurve, ThermalPoint};

/// The six things the CLI can compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CliCommand {
    Spectrum,
    Degeneracy,
    Thermo,
    DimVsEnergy,
    Symmetry,
    Evolve,
}

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    /// Per-command default: tabular commands emit CSV, report commands JSON.
    pub fn default_for(command: CliCommand) -> Self {
        match command {
            CliCommand::Spectrum | CliCommand::Thermo | CliCommand::DimVsEnergy
            | CliCommand::Evolve => OutputFormat::Csv,
            CliCommand::Degeneracy | CliCommand::Symmetry => OutputFormat::Json,
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// Everything one run needs. Fields irrelevant to the chosen command are
/// ignored; [`RunConfig::default`] carries the documented flag defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CliCommand,
    pub n1: u32,
    pub n2: u32,
    pub convention: EnergyConvention,
    /// Per-sector total-quanta cutoff for truncated-basis commands.
    pub cutoff_k: u32,
    /// Level ceiling `2E` for spectrum/degeneracy/symmetry.
    pub max_twice_energy: u64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_points: usize,
    /// Hopping amplitude for evolve.
    pub g: f64,
    /// Coupled ket pairs for evolve.
    pub pairs: Vec<(BasisLabel, BasisLabel)>,
    /// Initial ket for evolve; defaults to the first label of the first pair.
    pub initial: Option<BasisLabel>,
    pub t_max: f64,
    pub t_points: usize,
    /// Output file path, `-` for stdout.
    pub output_path: String,
    /// Output encoding; `None` picks the per-command default.
    pub format: Option<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: CliCommand::Spectrum,
            n1: 0,
            n2: 3,
            convention: EnergyConvention::Unshifted,
            cutoff_k: 6,
            max_twice_energy: 10,
            beta_min: 1e-2,
            beta_max: 50.0,
            beta_points: 400,
            g: 0.1,
            pairs: vec![(
                BasisLabel::new(1, vec![1]).expect("static label"),
                BasisLabel::new(3, vec![0, 0, 0]).expect("static label"),
            )],
            initial: None,
            t_max: 100.0,
            t_points: 201,
            output_path: "-".to_owned(),
            format: None,
        }
    }
}

/// Run failure, carrying the binary's exit code.
#[derive(Debug)]
pub enum CliError {
    /// Inconsistent or unusable configuration → exit 2.
    Config(String),
    /// A computation failed → exit 1.
    Compute(QdError),
    /// Output could not be written → exit 1.
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "cannot write output: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<QdError> for CliError {
    fn from(e: QdError) -> Self {
        CliError::Compute(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Exact spectrum summary: one row per occupied level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub range: DimRange,
    pub convention: EnergyConvention,
    pub max_twice_energy: u64,
    pub levels: Vec<SpectrumLevel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLevel {
    pub twice_energy: u64,
    pub energy: f64,
    pub multiplicity: u64,
}

/// Level-by-level degeneracy listing with explicit members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub range: DimRange,
    pub convention: EnergyConvention,
    pub max_twice_energy: u64,
    pub levels: Vec<EnergyLevel>,
}

/// Thermal sweep ordered by ascending beta (cold rows last).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermoReport {
    pub range: DimRange,
    pub convention: EnergyConvention,
    pub points: Vec<ThermalPoint>,
}

/// Sampled evolution of the configured hopping system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveReport {
    pub range: DimRange,
    pub convention: EnergyConvention,
    pub cutoff_k: u32,
    pub g: f64,
    pub pairs: Vec<(BasisLabel, BasisLabel)>,
    pub initial: BasisLabel,
    pub samples: Vec<EvolveSample>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolveSample {
    pub t: f64,
    pub mean_dim: f64,
    pub norm: f64,
}

/// Execute one configured run and write its report.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let format = config
        .format
        .unwrap_or_else(|| OutputFormat::default_for(config.command));
    let range = DimRange::new(config.n1, config.n2)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let rendered = match config.command {
        CliCommand::Spectrum => render_spectrum(config, range, format),
        CliCommand::Degeneracy => render_degeneracy(config, range, format),
        CliCommand::Thermo => render_thermo(config, range, format)?,
        CliCommand::DimVsEnergy => render_dim_vs_energy(config, range, format)?,
        CliCommand::Symmetry => render_symmetry(config, range, format),
        CliCommand::Evolve => render_evolve(config, range, format)?,
    };
    write_output(&config.output_path, rendered.as_bytes())
}

/// 17-significant-digit float field, fixed width style for CSV cells.
fn csv_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize infallibly");
    s.push('\n');
    s
}

fn write_output(path: &str, bytes: &[u8]) -> Result<(), CliError> {
    if path == "-" {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        lock.write_all(bytes)?;
        lock.flush()?;
        Ok(())
    } else {
        Ok(std::fs::write(path, bytes)?)
    }
}

fn occupied_levels(config: &RunConfig, range: DimRange) -> Vec<EnergyLevel> {
    (0..=config.max_twice_energy)
        .map(|te| level_degeneracy(range, te, config.convention))
        .filter(|level| level.multiplicity > 0)
        .collect()
}

fn render_spectrum(config: &RunConfig, range: DimRange, format: OutputFormat) -> String {
    let levels: Vec<SpectrumLevel> = occupied_levels(config, range)
        .into_iter()
        .map(|level| SpectrumLevel {
            twice_energy: level.twice_energy,
            energy: level.twice_energy as f64 / 2.0,
            multiplicity: level.multiplicity,
        })
        .collect();
    match format {
        OutputFormat::Json => to_json(&SpectrumReport {
            range,
            convention: config.convention,
            max_twice_energy: config.max_twice_energy,
            levels,
        }),
        OutputFormat::Csv => {
            let mut out = String::from("twice_energy,energy,multiplicity\n");
            for level in levels {
                out.push_str(&format!(
                    "{},{},{}\n",
                    level.twice_energy, level.energy, level.multiplicity
                ));
            }
            out
        }
    }
}

fn render_degeneracy(config: &RunConfig, range: DimRange, format: OutputFormat) -> String {
    let levels = occupied_levels(config, range);
    match format {
        OutputFormat::Json => to_json(&DegeneracyReport {
            range,
            convention: config.convention,
            max_twice_energy: config.max_twice_energy,
            levels,
        }),
        OutputFormat::Csv => {
            // one row per member; the label field holds commas, so quote it
            let mut out = String::from("twice_energy,energy,multiplicity,member\n");
            for level in levels {
                for member in &level.members {
                    out.push_str(&format!(
                        "{},{},{},\"{}\"\n",
                        level.twice_energy,
                        level.twice_energy as f64 / 2.0,
                        level.multiplicity,
                        member
                    ));
                }
            }
            out
        }
    }
}

fn thermal_rows(points: &[ThermalPoint]) -> String {
    let mut out = String::from("beta,Z,mean_energy,mean_dim\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            csv_float(p.beta),
            csv_float(p.z),
            csv_float(p.mean_energy),
            csv_float(p.mean_dim)
        ));
    }
    out
}

fn beta_grid(config: &RunConfig) -> Result<Vec<f64>, CliError> {
    let (lo, hi, points) = (config.beta_min, config.beta_max, config.beta_points);
    if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 {
        return Err(CliError::Config(format!(
            "beta range [{lo}, {hi}] must be finite and positive"
        )));
    }
    if lo >= hi {
        return Err(CliError::Config(format!(
            "beta-min {lo} must be strictly below beta-max {hi}"
        )));
    }
    if points < 1 {
        return Err(CliError::Config("beta-points must be at least 1".into()));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..points)
        .map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64))
        .collect())
}

fn render_thermo(
    config: &RunConfig,
    range: DimRange,
    format: OutputFormat,
) -> Result<String, CliError> {
    // ascending beta: a cooling sweep
    let points = beta_grid(config)?
        .into_iter()
        .map(|beta| thermal_point(beta, range, config.convention))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match format {
        OutputFormat::Csv => thermal_rows(&points),
        OutputFormat::Json => to_json(&ThermoReport {
            range,
            convention: config.convention,
            points,
        }),
    })
}

fn render_dim_vs_energy(
    config: &RunConfig,
    range: DimRange,
    format: OutputFormat,
) -> Result<String, CliError> {
    // curve order: descending beta, i.e. ascending mean energy
    let curve: ThermalCurve = dim_vs_energy_curve(range, config.convention, &beta_grid(config)?)?;
    Ok(match format {
        OutputFormat::Csv => thermal_rows(&curve.points),
        OutputFormat::Json => to_json(&curve),
    })
}

fn render_symmetry(config: &RunConfig, range: DimRange, format: OutputFormat) -> String {
    let report: SymmetryReport =
        symmetry_report(range, config.convention, config.max_twice_energy);
    match format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            // the base group is range-wide, so it rides along on every row
            let mut out = String::from("twice_energy,multiplicity,group,enhanced,base_group\n");
            for level in &report.per_level {
                out.push_str(&format!(
                    "{},{},{},{},\"{}\"\n",
                    level.twice_energy,
                    level.multiplicity,
                    level.group,
                    level.enhanced,
                    report.base_group
                ));
            }
            out
        }
    }
}

fn time_grid(config: &RunConfig) -> Result<Vec<f64>, CliError> {
    if !config.t_max.is_finite() || config.t_max < 0.0 {
        return Err(CliError::Config(format!(
            "t-max {} must be finite and nonnegative",
            config.t_max
        )));
    }
    if config.t_points < 1 {
        return Err(CliError::Config("t-points must be at least 1".into()));
    }
    if config.t_points == 1 {
        return Ok(vec![0.0]);
    }
    let n = config.t_points;
    Ok((0..n)
        .map(|i| config.t_max * i as f64 / (n - 1) as f64)
        .collect())
}

fn render_evolve(
    config: &RunConfig,
    range: DimRange,
    format: OutputFormat,
) -> Result<String, CliError> {
    if !config.g.is_finite() {
        return Err(CliError::Config(format!(
            "coupling g must be finite, got {}",
            config.g
        )));
    }
    if config.pairs.is_empty() {
        return Err(CliError::Config(
            "evolve needs at least one coupled pair".into(),
        ));
    }
    let basis: Arc<QdBasis> = QdBasis::new(range, config.cutoff_k, config.convention);
    if basis.len() > DEFAULT_DIM_GUARD {
        return Err(CliError::Config(format!(
            "basis holds {} states, above the evolution guard of {}; lower cutoff-k or narrow \
             the window",
            basis.len(),
            DEFAULT_DIM_GUARD
        )));
    }
    let initial = config
        .initial
        .clone()
        .unwrap_or_else(|| config.pairs[0].0.clone());
    for label in config
        .pairs
        .iter()
        .flat_map(|(a, b)| [a, b])
        .chain(std::iter::once(&initial))
    {
        if basis.index_of(label).is_none() {
            return Err(CliError::Config(format!(
                "label {label} is outside the configured basis (window {range}, cutoff {})",
                config.cutoff_k
            )));
        }
    }

    let hop = hopping_interaction(&basis, config.g, &config.pairs)?;
    let h = oscillator_hamiltonian(&basis).add(&hop)?;
    let psi0 = StateVector::basis_state(&basis, &initial)?;
    let trajectory: Trajectory =
        evolve_guarded(&h, &psi0, &time_grid(config)?, DEFAULT_DIM_GUARD)?;

    let samples: Vec<EvolveSample> = trajectory
        .times
        .iter()
        .zip(trajectory.mean_dim.iter().zip(&trajectory.norm))
        .map(|(&t, (&mean_dim, &norm))| EvolveSample { t, mean_dim, norm })
        .collect();
    Ok(match format {
        OutputFormat::Json => to_json(&EvolveReport {
            range,
            convention: config.convention,
            cutoff_k: config.cutoff_k,
            g: config.g,
            pairs: config.pairs.clone(),
            initial,
            samples,
        }),
        OutputFormat::Csv => {
            let mut out = String::from("t,mean_dim,norm\n");
            for s in &samples {
                out.push_str(&format!(
                    "{},{},{}\n",
                    csv_float(s.t),
                    csv_float(s.mean_dim),
                    csv_float(s.norm)
                ));
            }
            out
        }
    })
}
