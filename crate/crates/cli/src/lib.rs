//! Command-line front-end: counting, oracle verification, equivalence
//! checking, canonical forms and operation-count benchmarks.
//!
//! Exit codes: 0 success, 1 `equiv` found the inputs inequivalent or
//! `verify` saw a mismatch, 2 usage, parse or domain error, 3 internal
//! arithmetic fault.

pub mod records;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use exprcount_core::oracle::{oracle_count_with, OracleConfig};
use exprcount_core::{compute_table, compute_table_instrumented, parse_many, Error};

/// Environment variable overriding the oracle cutoff used by `verify`.
pub const CUTOFF_ENV: &str = "EXPRCOUNT_ORACLE_CUTOFF";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "exprcount",
    version,
    about = "Count inequivalent arithmetic expressions on distinct variables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print A_1..A_N, or all five sequences.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Also print S, Q, R and P (JSON always carries every column).
        #[arg(long)]
        all_sequences: bool,
    },
    /// Compare brute-force enumeration with the recurrence for k <= K.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        /// Allow k = 5, which takes hours.
        #[arg(long)]
        unsafe_large: bool,
    },
    /// Decide whether two expressions are equivalent.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Print the canonical fraction of an expression.
    Canon {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Report operation counts (stdout) and wall time (stderr) for computing the table.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

/// Failure of a subcommand, mapped to an exit code by [`run`].
#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Count {
            n,
            format,
            all_sequences,
        } => count(n, format, all_sequences, out),
        Command::Verify {
            max_k,
            unsafe_large,
        } => verify(max_k, unsafe_large, out),
        Command::Equiv { first, second } => equiv(&first, &second, out),
        Command::Canon { expr } => canon(&expr, out, err),
        Command::Bench { n, repeat } => bench(n, repeat, out, err),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_USAGE
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INTERNAL
        }
    }
}

fn count(n: usize, format: Format, all: bool, out: &mut dyn Write) -> Outcome {
    let table = compute_table(n)?;
    match format {
        Format::Table => records::write_table(&table, all, out)?,
        Format::Csv => records::write_csv(&table, all, out).map_err(|e| Failure::Io(e.into()))?,
        Format::Json => records::write_json(&table, out).map_err(|e| Failure::Io(e.into()))?,
    }
    Ok(EXIT_OK)
}

fn oracle_config(unsafe_large: bool) -> Result<OracleConfig, Failure> {
    let mut config = OracleConfig::default();
    if let Ok(value) = std::env::var(CUTOFF_ENV) {
        config.cutoff = value.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{CUTOFF_ENV} must be a nonnegative integer, got {value:?}"
            ))
        })?;
    }
    Ok(if unsafe_large {
        config.allow_large()
    } else {
        config
    })
}

fn verify(max_k: usize, unsafe_large: bool, out: &mut dyn Write) -> Outcome {
    let config = oracle_config(unsafe_large)?;
    config.check(max_k)?;
    let table = compute_table(max_k)?;
    let mut all_pass = true;
    for row in table.rows() {
        let oracle = oracle_count_with(row.k, &config)?;
        let pass = oracle == row.a;
        all_pass &= pass;
        let verdict = if pass { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{verdict} k={} oracle={oracle} recurrence={}",
            row.k, row.a
        )?;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_NEGATIVE })
}

fn equiv(first: &str, second: &str, out: &mut dyn Write) -> Outcome {
    let (trees, _) = parse_many(&[first, second])?;
    let equal = trees[0].evaluate()? == trees[1].evaluate()?;
    writeln!(out, "{}", if equal { "equivalent" } else { "inequivalent" })?;
    Ok(if equal { EXIT_OK } else { EXIT_NEGATIVE })
}

fn canon(expr: &str, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (trees, names) = parse_many(&[expr])?;
    writeln!(out, "{}", trees[0].evaluate()?)?;
    let renamed: Vec<String> = names
        .entries()
        .into_iter()
        .filter(|(v, name)| *name != format!("x{v}"))
        .map(|(v, name)| format!("{name} = x{v}"))
        .collect();
    if !renamed.is_empty() {
        writeln!(err, "where {}", renamed.join(", "))?;
    }
    Ok(EXIT_OK)
}

fn bench(n: usize, repeat: usize, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if repeat == 0 {
        return Err(Failure::Usage("--repeat must be at least 1".into()));
    }
    let mut times = Vec::with_capacity(repeat);
    let mut counts = None;
    for _ in 0..repeat {
        let start = Instant::now();
        let (_, ops) = compute_table_instrumented(n)?;
        times.push(start.elapsed());
        counts = Some(ops);
    }
    let ops = counts.expect("at least one run");
    writeln!(out, "n={n} {ops}")?;
    times.sort();
    writeln!(
        err,
        "wall time over {repeat} run(s): min {:?}, median {:?}, max {:?}",
        times[0],
        times[repeat / 2],
        times[repeat - 1]
    )?;
    Ok(EXIT_OK)
}
