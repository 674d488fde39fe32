//! Argument parsing and dispatch for the `primepart` binary.
//!
//! [`run`] takes the argument list and two sinks so the whole front end can
//! be driven from tests without spawning a process.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use primepart::certify::{certify, cross_check, Certificate, Verdict};
use primepart::erdoswoods::min_interval_start;
use primepart::numtheory::primes_below;
use primepart::partition::{
    contradiction_chain, is_prime_partitionable, oracle_decides, Step, EXHAUSTIVE_PRIME_LIMIT,
    MIN_N,
};
use rayon::prelude::*;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// The list as first published, kept for the corrigendum report.
pub const PUBLISHED_PREFIX: [u64; 10] = [16, 22, 34, 36, 46, 52, 56, 64, 66, 70];

#[derive(Debug, Parser)]
#[command(
    name = "primepart",
    version,
    about = "Prime partitionable numbers and their certificates"
)]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Decide with the exhaustive oracle instead of the solver.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every prime partitionable n ≤ LIMIT.
    Enumerate {
        #[arg(long)]
        limit: u64,
    },
    /// Print yes or no for a single n.
    Check { n: u64 },
    /// Write a certificate for n.
    Certify {
        n: u64,
        /// Destination file; the certificate goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the corrected list up to 100 and refute 52.
    Corrigendum,
    /// Least e1 ≤ BOUND starting a covered interval of width W.
    EwMin {
        w: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Check that the three characterizations agree for every n ≤ LIMIT.
    CrossCheck {
        #[arg(long)]
        limit: u64,
    },
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verify(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<primepart::Error> for Failure {
    fn from(e: primepart::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command. Results go to
/// `out`, diagnostics to `err`; the return value is the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
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
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.jobs {
        builder = builder.num_threads(k as usize);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    let mut buffer = Vec::new();
    let outcome = pool.install(|| dispatch(&cli, &mut buffer));
    if let Err(e) = out.write_all(&buffer).and_then(|()| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_VERIFY;
    }
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failure: {msg}");
            EXIT_VERIFY
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_VERIFY
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Enumerate { limit } => enumerate(cli, *limit, out),
        Command::Check { n } => check(cli, *n, out),
        Command::Certify { n, out: path } => certify_cmd(cli, *n, path.as_ref(), out),
        Command::Corrigendum => corrigendum(cli, out),
        Command::EwMin { w, bound } => ew_min(cli, *w, *bound, out),
        Command::CrossCheck { limit } => cross_check_cmd(cli, *limit, out),
    }
}

fn require_min(what: &str, n: u64) -> Outcome {
    if n < MIN_N {
        return Err(Failure::Usage(format!(
            "{what} = {n} must be at least {MIN_N}"
        )));
    }
    Ok(())
}

fn decide(oracle: bool, n: u64) -> Result<bool, Failure> {
    if oracle {
        Ok(oracle_decides(n)?)
    } else {
        Ok(is_prime_partitionable(n))
    }
}

/// Prime partitionable n in `4..=limit`, ascending whatever the pool size.
fn partitionable_up_to(oracle: bool, limit: u64) -> Result<Vec<u64>, Failure> {
    if oracle && limit >= MIN_N {
        let primes = primes_below(limit).len();
        if primes > EXHAUSTIVE_PRIME_LIMIT {
            return Err(primepart::Error::ExhaustiveBound {
                n: limit,
                primes,
                cutoff: EXHAUSTIVE_PRIME_LIMIT,
            }
            .into());
        }
    }
    let flags: Vec<bool> = (MIN_N..=limit)
        .into_par_iter()
        .map(|n| decide(oracle, n))
        .collect::<Result<_, _>>()?;
    Ok((MIN_N..=limit)
        .zip(flags)
        .filter_map(|(n, f)| f.then_some(n))
        .collect())
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn enumerate(cli: &Cli, limit: u64, out: &mut dyn Write) -> Outcome {
    let found = partitionable_up_to(cli.oracle, limit)?;
    match cli.format {
        Format::Text => {
            for n in &found {
                writeln!(out, "{n}")?;
            }
            Ok(())
        }
        Format::Json => emit_json(out, &found),
    }
}

#[derive(Serialize)]
struct CheckReport {
    n: u64,
    prime_partitionable: bool,
}

fn check(cli: &Cli, n: u64, out: &mut dyn Write) -> Outcome {
    require_min("n", n)?;
    let yes = decide(cli.oracle, n)?;
    match cli.format {
        Format::Text => Ok(writeln!(out, "{}", if yes { "yes" } else { "no" })?),
        Format::Json => emit_json(
            out,
            &CheckReport {
                n,
                prime_partitionable: yes,
            },
        ),
    }
}

#[derive(Serialize)]
struct CertifySummary<'a> {
    n: u64,
    verdict: Verdict,
    checks_passed: usize,
    checks_total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<&'a str>,
}

fn certify_cmd(cli: &Cli, n: u64, path: Option<&PathBuf>, out: &mut dyn Write) -> Outcome {
    require_min("n", n)?;
    let cert = certify(n)?;
    if cli.oracle {
        let decided = decide(true, n)?;
        if decided != (cert.verdict == Verdict::PrimePartitionable) {
            return Err(Failure::Verify(format!(
                "oracle disagrees with the solver on {n}"
            )));
        }
    }
    let Some(path) = path else {
        writeln!(out, "{}", cert.to_json())?;
        return complete(&cert);
    };
    std::fs::write(path, cert.to_json() + "\n")?;
    let passed = cert.checks.iter().filter(|c| c.pass).count();
    let shown = path.display().to_string();
    match cli.format {
        Format::Text => writeln!(
            out,
            "{n}: {}; {passed}/{} checks passed; wrote {shown}",
            verdict_label(cert.verdict),
            cert.checks.len()
        )?,
        Format::Json => emit_json(
            out,
            &CertifySummary {
                n,
                verdict: cert.verdict,
                checks_passed: passed,
                checks_total: cert.checks.len(),
                out: Some(&shown),
            },
        )?,
    }
    complete(&cert)
}

fn complete(cert: &Certificate) -> Outcome {
    if cert.is_complete() {
        return Ok(());
    }
    let failed: Vec<&str> = cert
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    Err(Failure::Verify(format!(
        "certificate for {} is incomplete; failed: {failed:?}",
        cert.n
    )))
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::PrimePartitionable => "prime partitionable",
        Verdict::NotPrimePartitionable => "not prime partitionable",
    }
}

#[derive(Serialize)]
struct CorrigendumReport {
    corrected: Vec<u64>,
    published_prefix: Vec<u64>,
    excluded: Vec<u64>,
    chain_for: u64,
    chain: Vec<Step>,
}

fn corrigendum(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let corrected = partitionable_up_to(cli.oracle, 100)?;
    let excluded: Vec<u64> = PUBLISHED_PREFIX
        .iter()
        .copied()
        .filter(|n| !corrected.contains(n))
        .collect();
    let chain = contradiction_chain(52)?
        .ok_or_else(|| Failure::Verify("52 has no propagation refutation".into()))?;
    let report = CorrigendumReport {
        corrected,
        published_prefix: PUBLISHED_PREFIX.to_vec(),
        excluded,
        chain_for: 52,
        chain,
    };
    match cli.format {
        Format::Json => emit_json(out, &report),
        Format::Text => {
            let join = |v: &[u64]| {
                v.iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            writeln!(out, "corrected list up to 100: {}", join(&report.corrected))?;
            writeln!(out, "published prefix: {}", join(&report.published_prefix))?;
            writeln!(out, "excluded: {}", join(&report.excluded))?;
            writeln!(out, "52 is not prime partitionable:")?;
            for (i, step) in report.chain.iter().enumerate() {
                writeln!(out, "  {}. {step}", i + 1)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct EwMinReport {
    w: u64,
    bound: u64,
    e1: Option<u64>,
}

fn ew_min(cli: &Cli, w: u64, bound: u64, out: &mut dyn Write) -> Outcome {
    if w == 0 {
        return Err(Failure::Usage("width W must be positive".into()));
    }
    if bound < 2 {
        return Err(Failure::Usage(format!(
            "bound = {bound} must be at least 2"
        )));
    }
    if bound.checked_add(w).is_none() {
        return Err(Failure::Usage(format!(
            "bound = {bound} plus width overflows"
        )));
    }
    let e1 = min_interval_start(w, bound);
    match cli.format {
        Format::Json => emit_json(out, &EwMinReport { w, bound, e1 }),
        Format::Text => match e1 {
            Some(e1) => Ok(writeln!(out, "{e1}")?),
            None => Ok(writeln!(out, "none within bound")?),
        },
    }
}

#[derive(Serialize)]
struct CrossCheckReport {
    limit: u64,
    checked: u64,
    failures: Vec<u64>,
}

fn cross_check_cmd(cli: &Cli, limit: u64, out: &mut dyn Write) -> Outcome {
    require_min("limit", limit)?;
    let agree: Vec<bool> = (MIN_N..=limit)
        .into_par_iter()
        .map(cross_check)
        .collect::<Result<_, _>>()?;
    let failures: Vec<u64> = (MIN_N..=limit)
        .zip(agree)
        .filter_map(|(n, ok)| (!ok).then_some(n))
        .collect();
    let report = CrossCheckReport {
        limit,
        checked: limit - MIN_N + 1,
        failures,
    };
    match cli.format {
        Format::Json => emit_json(out, &report)?,
        Format::Text => {
            for n in &report.failures {
                writeln!(out, "mismatch at {n}")?;
            }
            writeln!(
                out,
                "checked {} values; {} failures",
                report.checked,
                report.failures.len()
            )?;
        }
    }
    if report.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "characterizations disagree at {:?}",
            report.failures
        )))
    }
}
