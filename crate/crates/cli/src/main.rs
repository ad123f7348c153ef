mod commands;
mod failure;
mod plot;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "tbulge", version, about = "Single-photon routing in a T-bulge of coupled-resonator waveguides")]
struct Cli {
    /// JSON run configuration with `params` and optional `oracle` and `grid` blocks.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory for output files.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for random verification samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override one router parameter, e.g. `--set g_c=1.5`.
    #[arg(long = "set", global = true, value_name = "NAME=VALUE")]
    overrides: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PortArg {
    #[value(alias = "from_a")]
    A,
    #[value(alias = "from_b")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Freq,
    Packet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Amplitudes and coefficients at one wavenumber.
    Compute {
        /// Wavenumber k_a in radians; literals such as `pi/4` are accepted.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum)]
        port: PortArg,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Compare the closed form with the lattice oracle on random couplings.
    Verify {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value = "freq")]
        mode: ModeArg,
    },
    /// Evaluate the grid of the configuration.
    Sweep {
        #[arg(long, value_enum, default_value = "both")]
        format: FormatArg,
    },
    /// Dataset and plot script for the coupling-space figures (2: from a, 3: from b).
    Figure {
        #[arg(long)]
        figure: u32,
        /// Points per coupling axis.
        #[arg(long, default_value_t = 40)]
        count: usize,
    },
    /// Interior extrema of a coefficient along one axis, grouped by the other axes.
    Extrema {
        #[arg(long, default_value = "T_ba")]
        coefficient: String,
        #[arg(long, default_value = "g_b")]
        scan: String,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = commands::load_config(cli.config.as_deref(), &cli.overrides)?;
    let ctx = commands::Context { cfg, out: cli.out, threads: cli.threads, seed: cli.seed };
    match cli.command {
        Command::Compute { k, port, json, csv } => {
            let format = if json {
                commands::PointFormat::Json
            } else if csv {
                commands::PointFormat::Csv
            } else {
                commands::PointFormat::Text
            };
            commands::compute(&ctx, &k, port == PortArg::A, format)
        }
        Command::Verify { samples, mode } => commands::verify(&ctx, samples, mode == ModeArg::Packet),
        Command::Sweep { format } => commands::sweep(
            &ctx,
            matches!(format, FormatArg::Csv | FormatArg::Both),
            matches!(format, FormatArg::Json | FormatArg::Both),
        ),
        Command::Figure { figure, count } => commands::figure(&ctx, figure, count),
        Command::Extrema { coefficient, scan } => commands::extrema(&ctx, &coefficient, &scan),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
