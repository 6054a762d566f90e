//! `poncelet`: trace, classify and verify loci of Poncelet triangle families.
//!
//! Exit status: 0 on success, 1 when a check or computation fails, 2 on a
//! usage error.

mod commands;
mod args;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use args::{FamilyArgs, TolArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) | CliError::Io { .. } => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "poncelet", version, about = "Poncelet triangle families, their loci and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write one tracked point over the sweep as CSV (t,x,y,valid)
    Trace {
        #[command(flatten)]
        family: FamilyArgs,
        /// Center (X1, X165, ...), vertex (P2) or excenter (P1')
        #[arg(long, visible_alias = "tracked")]
        center: Option<String>,
        /// Number of sweep samples
        #[arg(short = 'n', long = "samples")]
        samples: Option<usize>,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fit and classify loci; JSON record per tracked point
    Classify {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        tols: TolArgs,
        /// Comma-separated or repeated
        #[arg(long, visible_alias = "tracked", value_delimiter = ',')]
        center: Vec<String>,
        /// Number of sweep samples
        #[arg(short = 'n', long = "samples")]
        samples: Option<usize>,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run named checks (or all of them); JSON report
    Verify {
        /// Claim ids; see --list
        claims: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        tols: TolArgs,
        /// Number of sweep samples
        #[arg(short = 'n', long = "samples")]
        samples: Option<usize>,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reproduce the stationarity table (1) or the locus-type table (2)
    Table {
        /// 1 or 2
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        tols: TolArgs,
        /// Number of sweep samples
        #[arg(short = 'n', long = "samples")]
        samples: Option<usize>,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fit the envelope of one side of the family; JSON
    Envelope {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        tols: TolArgs,
        /// Side as two vertex indices, e.g. 23 or P2P3
        #[arg(long, default_value = "23")]
        side: String,
        /// Number of sweep samples
        #[arg(short = 'n', long = "samples")]
        samples: Option<usize>,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw the outer conic, caustics, a sample triangle, the envelope and loci
    Svg {
        #[command(flatten)]
        family: FamilyArgs,
        /// Loci to draw, comma-separated or repeated
        #[arg(long, visible_alias = "tracked", value_delimiter = ',')]
        center: Vec<String>,
        /// Driving parameter of the sample triangle, radians
        #[arg(long, default_value_t = 0.7, allow_hyphen_values = true)]
        t: f64,
        /// Number of sweep samples
        #[arg(short = 'n', long = "samples")]
        samples: Option<usize>,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Trace { family, center, samples, output } => {
            commands::trace(&family.merge()?, center.as_deref(), samples, output.as_deref())
        }
        Command::Classify { family, tols, center, samples, output } => {
            commands::classify(&family.merge()?, &tols, &center, samples, output.as_deref())
        }
        Command::Verify { claims, all, list, family, tols, samples, output } => {
            commands::verify(&claims, all, list, &family.merge()?, &tols, samples, output.as_deref())
        }
        Command::Table { which, json, tols, samples, output } => {
            commands::table(which, json, &FamilyArgs::default().merge()?, &tols, samples, output.as_deref())
        }
        Command::Envelope { family, tols, side, samples, output } => {
            commands::envelope(&family.merge()?, &tols, &side, samples, output.as_deref())
        }
        Command::Svg { family, center, t, samples, output } => {
            commands::svg(&family.merge()?, &center, t, samples, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
