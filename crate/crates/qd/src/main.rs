//! Thin flag layer over [`qd::cli::run`]: parse, build a `RunConfig`, run,
//! map errors to exit codes (clap itself exits 2 on bad flags).

use clap::{Args, Parser, Subcommand};

use qd::basis::{BasisLabel, EnergyConvention};
use qd::cli::{run, CliCommand, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "qd",
    version,
    about = "Quantum systems whose spatial dimension is itself an observable: \
             exact spectra, thermodynamics, symmetry structure, and dynamics \
             over a window of dimension sectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact energy levels and multiplicities of a window
    Spectrum {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Level degeneracies with every member ket listed
    Degeneracy {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Thermal sweep over beta: partition function, mean energy, mean dimension
    Thermo {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        betas: BetaArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Effective dimension against mean energy (rows from cold to hot)
    DimVsEnergy {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        betas: BetaArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Multiplet structure and the mixing groups it implies
    Symmetry {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evolve a ket under the free Hamiltonian plus a hopping interaction
    Evolve {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        evolve: EvolveArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct WindowArgs {
    /// Smallest sector dimension
    #[arg(long, default_value_t = 0)]
    n1: u32,
    /// Largest sector dimension
    #[arg(long, default_value_t = 3)]
    n2: u32,
    /// Vacuum convention: `unshifted` grounds sector d at d/2, `shifted` at 0
    #[arg(long, default_value = "unshifted")]
    convention: EnergyConvention,
}

#[derive(Args)]
struct LevelArgs {
    /// Highest level to include, given as 2E (exact integer)
    #[arg(long = "max-2e", default_value_t = 10)]
    max_twice_energy: u64,
}

#[derive(Args)]
struct BetaArgs {
    /// Smallest inverse temperature of the log-spaced grid
    #[arg(long, default_value_t = 1e-2)]
    beta_min: f64,
    /// Largest inverse temperature of the log-spaced grid
    #[arg(long, default_value_t = 50.0)]
    beta_max: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 400)]
    beta_points: usize,
}

#[derive(Args)]
struct EvolveArgs {
    /// Hopping amplitude between paired kets
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    g: f64,
    /// Coupled ket pair, written `d;k1,..|d';k1,..` — repeat for more pairs
    #[arg(long = "pair", value_parser = parse_pair, default_value = "1;1|3;0,0,0")]
    pairs: Vec<(BasisLabel, BasisLabel)>,
    /// Initial ket (default: the first label of the first pair)
    #[arg(long)]
    initial: Option<BasisLabel>,
    /// Max total quanta kept per sector when truncating the basis
    #[arg(long = "cutoff-k", default_value_t = 6)]
    cutoff_k: u32,
    /// End of the sampled time span (starts at 0)
    #[arg(long, default_value_t = 100.0)]
    t_max: f64,
    /// Number of evenly spaced sample times
    #[arg(long, default_value_t = 201)]
    t_points: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file path, `-` for stdout
    #[arg(long, short = 'o', default_value = "-")]
    output: String,
    /// `csv` or `json` (default depends on the command)
    #[arg(long)]
    format: Option<OutputFormat>,
}

fn parse_pair(s: &str) -> Result<(BasisLabel, BasisLabel), String> {
    let (a, b) = s
        .split_once('|')
        .ok_or_else(|| format!("pair `{s}` is missing `|` (expected `label|label`)"))?;
    Ok((a.parse()?, b.parse()?))
}

fn build_config(command: Command) -> RunConfig {
    let mut cfg = RunConfig::default();
    let (window, output) = match command {
        Command::Spectrum { window, level, output } => {
            cfg.command = CliCommand::Spectrum;
            cfg.max_twice_energy = level.max_twice_energy;
            (window, output)
        }
        Command::Degeneracy { window, level, output } => {
            cfg.command = CliCommand::Degeneracy;
            cfg.max_twice_energy = level.max_twice_energy;
            (window, output)
        }
        Command::Thermo { window, betas, output } => {
            cfg.command = CliCommand::Thermo;
            cfg.beta_min = betas.beta_min;
            cfg.beta_max = betas.beta_max;
            cfg.beta_points = betas.beta_points;
            (window, output)
        }
        Command::DimVsEnergy { window, betas, output } => {
            cfg.command = CliCommand::DimVsEnergy;
            cfg.beta_min = betas.beta_min;
            cfg.beta_max = betas.beta_max;
            cfg.beta_points = betas.beta_points;
            (window, output)
        }
        Command::Symmetry { window, level, output } => {
            cfg.command = CliCommand::Symmetry;
            cfg.max_twice_energy = level.max_twice_energy;
            (window, output)
        }
        Command::Evolve { window, evolve, output } => {
            cfg.command = CliCommand::Evolve;
            cfg.g = evolve.g;
            cfg.pairs = evolve.pairs;
            cfg.initial = evolve.initial;
            cfg.cutoff_k = evolve.cutoff_k;
            cfg.t_max = evolve.t_max;
            cfg.t_points = evolve.t_points;
            (window, output)
        }
    };
    cfg.n1 = window.n1;
    cfg.n2 = window.n2;
    cfg.convention = window.convention;
    cfg.output_path = output.output;
    cfg.format = output.format;
    cfg
}

fn main() {
    let config = build_config(Cli::parse().command);
    if let Err(e) = run(&config) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
