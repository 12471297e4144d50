use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilcentral::analyzer::Property;
use nilcentral::FieldSpec;

mod commands;
mod report;

#[derive(Parser, Debug)]
#[command(name = "nilcentral", version, about = "Centralizing and commuting maps on strictly upper triangular matrices")]
struct Cli {
    /// Seed for every randomized check
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Report `timing_ms` as null so output is byte-stable
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a map is centralizing or commuting
    Decide {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_parser = parse_property)]
        property: Property,
    },
    /// Split a centralizing map into lambda * id + mu
    Decompose {
        #[arg(long)]
        map: PathBuf,
    },
    /// Dimension of the centralizing / commuting map spaces
    Dims {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Kind::Both)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Centralizer of a matrix, brute force and closed form
    Centralizer {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Rank of the S1 and S2 witness families
    Span {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Run every identity audit up to the given size
    Identities {
        #[arg(long, value_parser = clap::value_parser!(u64).range(5..=200))]
        r_max: u64,
        /// Random pairs per size for the S1 commutator check
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Census over a grid of sizes and fields
    Sweep {
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(2..=64))]
        r: Vec<u64>,
        /// Fields: Q or a prime such as 101 (also accepted as F101)
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_sweep_field)]
        p: Vec<FieldSpec>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a named object in its JSON schema
    Examples {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum)]
        name: ExampleName,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct RingArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=64))]
    r: u64,
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    field: FieldSpec,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Centralizing,
    Commuting,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ExampleName {
    #[value(name = "g")]
    G,
    #[value(name = "p")]
    P,
    #[value(name = "J")]
    J,
    #[value(name = "W1")]
    W1,
    #[value(name = "W2")]
    W2,
    #[value(name = "S1")]
    S1,
    #[value(name = "S2")]
    S2,
}

fn parse_property(s: &str) -> Result<Property, String> {
    s.parse()
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: nilcentral::Error| e.to_string())
}

fn parse_sweep_field(s: &str) -> Result<FieldSpec, String> {
    if s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty() {
        parse_field(&format!("F{s}"))
    } else {
        parse_field(s)
    }
}

/// Process outcome: 0 when the checked property holds, 1 when it fails.
pub enum Outcome {
    Holds,
    Fails,
}

fn init_threads() {
    if let Ok(v) = std::env::var("NILCENTRAL_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    log::warn!("could not size thread pool: {e}");
                }
            }
            _ => log::warn!("ignoring NILCENTRAL_THREADS={v:?}"),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    init_threads();
    match commands::run(&cli) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
