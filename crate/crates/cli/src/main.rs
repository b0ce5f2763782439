//! `matfact`: factor SL₂ matrices, check and generate points of their
//! factorization varieties, and run density witnesses.
//!
//! Every command writes JSON lines. Exit codes: 0 success, 1 invalid
//! input, 2 empty result, 3 budget exhausted.

mod commands;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "matfact", version, about = "Elementary factorizations of SL2 matrices over S-integer rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Z, Z[1/m], Z[sqrt(d)] or Z[sqrt(d),1/m]
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Write to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a matrix into elementary matrices
    Factor {
        #[command(flatten)]
        common: Common,
        /// Matrix as {"a":…,"c":…,"b":…,"d":…}, with b bottom-left
        #[arg(long)]
        matrix: String,
        /// Word length; switches from Euclidean division to bounded search
        #[arg(long)]
        k: Option<usize>,
        /// Search box N[,E[,Q]]: |p| ≤ N, denominator exponents ≤ E, |q| ≤ Q
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, default_value = "lower")]
        shape: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a point against a matrix and print the residuals
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: String,
        /// Point as {"shape":…,"entries":[…]} or a bare array of entries
        #[arg(long)]
        point: String,
        /// Shape used for bare arrays
        #[arg(long, default_value = "lower")]
        shape: String,
    },
    /// Generate integral points by the window actions
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "lower")]
        shape: String,
        /// Number of points, seed included
        #[arg(long, short = 'n', default_value_t = 100)]
        count: usize,
        /// Run a seeded random walk instead of breadth-first search
        #[arg(long)]
        seed: Option<u64>,
        /// Maximum number of points expanded
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// List every point inside a height box
    Enum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        bound: String,
        #[arg(long, default_value = "lower")]
        shape: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Maximum number of half-words visited
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Density witness for generated integral points
    Density {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Variety::Factorization)]
        variety: Variety,
        /// Required for the factorization variety
        #[arg(long)]
        matrix: Option<String>,
        /// Seed point for the orbit; defaults to the Euclidean factorization over Z
        #[arg(long)]
        point: Option<String>,
        /// Explicit point list (JSON array); skips generation
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, short = 'n', default_value_t = 120)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the sampled baseline nullity
        #[arg(long)]
        baseline: Option<usize>,
    },
    /// Units congruent to 1 modulo an element
    Units {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        modulus: String,
        #[arg(long, short = 'n', default_value_t = 3)]
        count: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variety {
    /// V_k(A)
    Factorization,
    /// x₁⋯x_k = 1
    Unit,
}

/// A failure and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    pub fn empty(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn exhausted(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<matfact::Error> for Failure {
    fn from(e: matfact::Error) -> Self {
        use matfact::{Error, RingError};
        match e {
            Error::BoundTooLarge { .. } | Error::Ring(RingError::OrderNotFound { .. }) => {
                Failure::exhausted(e.to_string())
            }
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<matfact::RingError> for Failure {
    fn from(e: matfact::RingError) -> Self {
        matfact::Error::from(e).into()
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::invalid(format!("i/o: {e}"))
    }
}

fn open_output(common: &Common) -> Result<Box<dyn Write>, Failure> {
    Ok(match &common.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Factor { common, .. }
            | Command::Verify { common, .. }
            | Command::Orbit { common, .. }
            | Command::Enum { common, .. }
            | Command::Density { common, .. }
            | Command::Units { common, .. } => common,
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    use commands::*;
    let common = cli.command.common().clone();
    let mut out = open_output(&common)?;
    let ring = common.ring.as_str();
    let result = match cli.command {
        Command::Factor { matrix, k, bound, shape, jobs, .. } => {
            factor(&mut out, ring, &matrix, k, bound.as_deref(), &shape, jobs)
        }
        Command::Verify { matrix, point, shape, .. } => verify(&mut out, ring, &matrix, &point, &shape),
        Command::Orbit { matrix, point, shape, count, seed, budget, .. } => {
            orbit(&mut out, ring, &matrix, &point, &shape, count, seed, budget)
        }
        Command::Enum { matrix, k, bound, shape, jobs, cap, .. } => {
            enumerate(&mut out, ring, &matrix, k, &bound, &shape, jobs, cap)
        }
        Command::Density { variety, matrix, point, points, k, degree, count, seed, baseline, .. } => {
            let req = DensityRequest {
                ring,
                unit_variety: variety == Variety::Unit,
                matrix: matrix.as_deref(),
                point: point.as_deref(),
                points: points.as_deref(),
                k,
                degree,
                count,
                seed,
                baseline,
            };
            density(&mut out, &req)
        }
        Command::Units { modulus, count, .. } => units(&mut out, ring, &modulus, count),
    };
    // points printed before a failure are still valid output
    out.flush()?;
    result
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("matfact: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
