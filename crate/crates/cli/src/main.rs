//! Command-line front end for the crisscross library.
//!
//! Exit codes: 0 success or member, 1 clean negative, 2 input error,
//! 3 decode failure, 4 ambiguity, 5 capacity.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "crisscross", version, about = "Criss-cross deletion correcting array codes")]
struct Cli {
    /// Report wall time for the operation.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Redundancy bounds as CSV, one row per (n, q) tuple.
    Bounds(BoundsArgs),
    /// Test whether an array belongs to the code given by a params file.
    Check(CheckArgs),
    /// Delete rows and columns from an array.
    Corrupt(CorruptArgs),
    /// Recover a codeword from a received array.
    Decode(DecodeArgs),
    /// Certify that a codebook corrects the given deletions.
    Verify(VerifyArgs),
    /// Run seeded corrupt-and-decode trials.
    Simulate(SimulateArgs),
    /// Count good or valid arrays.
    Count(CountArgs),
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Array sizes: comma separated values or inclusive ranges `a..b`.
    #[arg(long)]
    n: String,
    /// Alphabet sizes, same syntax as `--n`.
    #[arg(long, default_value = "2")]
    q: String,
    #[arg(long, default_value_t = 1)]
    tr: usize,
    #[arg(long, default_value_t = 1)]
    tc: usize,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Params record (`-` for standard input).
    #[arg(long)]
    params: String,
    /// Array file (`-` for standard input).
    array: String,
}

#[derive(Args, Debug)]
struct CorruptArgs {
    /// Array file (`-` for standard input).
    array: String,
    /// Rows to delete (1-based, comma separated); for a burst, the first row.
    #[arg(long, value_delimiter = ',')]
    rows: Option<Vec<usize>>,
    /// Columns to delete; for a burst, the first column.
    #[arg(long, value_delimiter = ',')]
    cols: Option<Vec<usize>>,
    /// Delete consecutive rows and columns.
    #[arg(long)]
    burst: bool,
    #[arg(long, default_value_t = 1)]
    tr: usize,
    #[arg(long, default_value_t = 1)]
    tc: usize,
    /// Seed for a random pattern; required when a position is not given.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the minor here instead of standard output.
    #[arg(long)]
    output: Option<String>,
    /// Write the pattern record here instead of standard error.
    #[arg(long)]
    record: Option<String>,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    #[arg(long)]
    params: String,
    /// Received array (`-` for standard input).
    received: String,
    #[arg(long, value_enum, default_value_t = PathArg::Auto)]
    path: PathArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Codebook file (`-` for standard input).
    codebook: String,
    #[arg(long, default_value_t = 1)]
    tr: usize,
    #[arg(long, default_value_t = 1)]
    tc: usize,
    #[arg(long)]
    burst: bool,
    /// Most minors to compute before giving up.
    #[arg(long, default_value_t = crisscross::DEFAULT_ENUMERATION_CAP)]
    cap: u64,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    construction: ConstructionArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 1)]
    tr: usize,
    #[arg(long, default_value_t = 1)]
    tc: usize,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    rows_distinct: bool,
    #[arg(long, value_enum, default_value_t = ProfileArg::Instantiated)]
    profile: ProfileArg,
    #[arg(long, value_enum, default_value_t = PathArg::Auto)]
    path: PathArg,
    /// Rejection-sampling attempts allowed per trial.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    /// Band height, for `--mode valid`.
    #[arg(long)]
    l: Option<usize>,
    /// Monte-Carlo samples, for `--mode valid`; needs `--seed`.
    #[arg(long, default_value_t = 0)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest number of arrays to enumerate, or of transfer-matrix states.
    #[arg(long)]
    cap: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PathArg {
    Auto,
    Fast,
    Scan,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructionArg {
    C1,
    C2,
    C3,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Instantiated,
    Uniform,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Good,
    Valid,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let timing = cli.timing;
    let outcome = match cli.command {
        Command::Bounds(a) => commands::bounds(&a),
        Command::Check(a) => commands::check(&a),
        Command::Corrupt(a) => commands::corrupt(&a),
        Command::Decode(a) => commands::decode(&a, timing),
        Command::Verify(a) => commands::verify(&a, timing),
        Command::Simulate(a) => commands::simulate(&a, timing),
        Command::Count(a) => commands::count(&a, timing),
    };
    match outcome {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status as u8)
        }
    }
}
