//! The `lucascheck` command line. [`run`] returns the process exit code:
//! 0 when everything checked holds, 1 when something fails, 2 on usage or
//! configuration errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::congruences::{
    evaluate_range, gould_identity_exact, CongruenceId, CongruenceResult, RangeSpec, REGISTRY,
};
use crate::report;
use crate::wss::{scan_range, ScanOptions};

pub const JOBS_ENV: &str = "LUCASCHECK_JOBS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lucascheck",
    version,
    about = "Check Lucas-sequence congruences over ranges of prime powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one registry row, or all of them, over a range of p^a.
    Verify(VerifyArgs),
    /// Search for Wall-Sun-Sun primes.
    Scan(ScanArgs),
    /// Check an exact identity.
    #[command(subcommand)]
    Identity(IdentityCommand),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Registry id, or `all`.
    id: String,
    #[arg(long, default_value_t = 3)]
    p_min: u64,
    #[arg(long, default_value_t = 100)]
    p_max: u64,
    #[arg(long, default_value_t = 1)]
    a_max: u32,
    /// Skip tuples with p^a above this.
    #[arg(long)]
    q_max: Option<u64>,
    /// x samples for rows that take x.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<i64>>,
    /// (A,B) samples as A:B, for rows that take them.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_ab)]
    ab: Option<Vec<(i64, i64)>>,
    /// l samples for CB2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    l: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = JOBS_ENV)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    #[arg(long, env = JOBS_ENV)]
    jobs: Option<usize>,
    /// Resume from, and periodically save to, this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Print `p quotient` for every scanned prime.
    #[arg(long)]
    emit_quotients: bool,
}

#[derive(Debug, Subcommand)]
enum IdentityCommand {
    /// sum x^k/C(n,k) against its closed form, exactly, for n = 1..=N.
    Gould {
        #[arg(long, default_value_t = 25)]
        n_max: u64,
        /// Rationals such as 3 or -2/5.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "1"
        )]
        x: Vec<BigRational>,
    },
}

fn parse_ab(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got {s:?}"))?;
    let a = a.trim().parse().map_err(|e| format!("A in {s:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("B in {s:?}: {e}"))?;
    Ok((a, b))
}

fn jobs(requested: Option<usize>) -> usize {
    requested
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Scan(args) => scan(args),
        Command::Identity(IdentityCommand::Gould { n_max, x }) => gould(n_max, &x),
    }
}

fn list_registry() {
    eprintln!("known ids:");
    for row in REGISTRY {
        eprintln!("  {:<6} {}", row.name, row.statement);
    }
}

fn verify(args: VerifyArgs) -> i32 {
    let ids: Vec<CongruenceId> = if args.id.eq_ignore_ascii_case("all") {
        CongruenceId::all().collect()
    } else {
        match args.id.parse() {
            Ok(id) => vec![id],
            Err(e) => {
                eprintln!("error: {e}");
                list_registry();
                return EXIT_USAGE;
            }
        }
    };
    if args.p_min > args.p_max || args.a_max == 0 {
        eprintln!("error: need p-min <= p-max and a-max >= 1");
        return EXIT_USAGE;
    }
    let mut spec = RangeSpec::new(args.p_min, args.p_max, args.a_max);
    spec.q_max = args.q_max;
    spec.xs = args.x;
    spec.abs = args.ab;
    spec.ls = args.l;

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs(args.jobs))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };

    let mut results: Vec<CongruenceResult> = Vec::new();
    let mut skipped = 0;
    for id in ids {
        match pool.install(|| evaluate_range(id, &spec)) {
            Ok(outcome) => {
                skipped += outcome.skipped;
                results.extend(outcome.results);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    }

    let sink: Box<dyn Write> = match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let written = match args.format {
        Format::Jsonl => report::write_jsonl(sink, &results).map_err(report::ReportError::from),
        Format::Csv => report::write_csv(sink, &results),
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return EXIT_USAGE;
    }

    let failures = results.iter().filter(|r| !r.holds).count();
    eprintln!("evaluated: {}", results.len());
    eprintln!("skipped: {skipped}");
    eprintln!("failures: {failures}");
    if failures > 0 {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

fn scan(args: ScanArgs) -> i32 {
    let mut opts = ScanOptions::new(jobs(args.jobs)).emit_quotients(args.emit_quotients);
    if let Some(path) = args.checkpoint {
        opts = opts.checkpoint(path);
    }
    let summary = match scan_range(args.from, args.to, &opts) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut out = BufWriter::new(io::stdout().lock());
    if let Some(quotients) = &summary.quotients {
        for (p, q) in quotients {
            let _ = writeln!(out, "{p} {q}");
        }
    }
    let _ = out.flush();
    eprintln!("range: [{}, {}]", summary.lo, summary.hi);
    eprintln!("scanned: {} primes", summary.scanned);
    eprintln!("throughput: {:.0} primes/s", summary.throughput());
    if summary.hits.is_empty() {
        eprintln!("hits: none");
        EXIT_OK
    } else {
        for h in &summary.hits {
            eprintln!(
                "HIT: p = {} divides F_{} to the second power",
                h.p, h.f_index
            );
        }
        EXIT_FAIL
    }
}

fn gould(n_max: u64, xs: &[BigRational]) -> i32 {
    let mut failures = 0;
    let mut checked = 0;
    let mut out = io::stdout().lock();
    for x in xs {
        for n in 1..=n_max {
            match gould_identity_exact(n, x) {
                Ok(g) => {
                    checked += 1;
                    if !g.equal() {
                        failures += 1;
                    }
                    let _ = writeln!(
                        out,
                        "n={n} x={x} lhs={} rhs={} equal={}",
                        g.lhs,
                        g.rhs,
                        g.equal()
                    );
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            }
        }
    }
    eprintln!("checked: {checked}");
    eprintln!("failures: {failures}");
    if failures > 0 {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}
