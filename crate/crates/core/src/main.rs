//! Command line front end.
//!
//! Exit codes: 0 on success, 1 when a verification or certificate search
//! fails, 2 on input or usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use itertools::Itertools;
use num::BigRational;

use signrank::certify::{block_pivot_certificate, monomial_minor_bound, Certificate};
use signrank::matrix::{format_rational, ExactMatrix};
use signrank::pattern::{Block, IndexSet, SignPattern};
use signrank::realize::{empirical_min_rank, sample_min_rank_realization, sample_realization, RealizeError, SampleConfig};
use signrank::verify::{verify_builtin_claims, ClaimStatus};

#[derive(Parser)]
#[command(
    name = "signrank",
    version,
    about = "Exact rank and diagonalizability checks for sign pattern matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full claim pipeline against the built-in 9x9 pattern
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Randomized spot checks per claim; 0 keeps only the deterministic parts
        #[arg(long, default_value_t = 100)]
        trials: u32,
        /// Numerators and denominators are drawn from 1..=MAGNITUDE
        #[arg(long, default_value_t = 10)]
        magnitude: u32,
        /// Write the full JSON report to this path ("-" for stdout)
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exact rank of a rational matrix file
    Rank { file: PathBuf },
    /// Exact determinant of a square rational matrix file
    Det { file: PathBuf },
    /// Characteristic polynomial of a square rational matrix file
    Charpoly { file: PathBuf },
    /// Decide diagonalizability over the complex numbers
    Diag { file: PathBuf },
    /// All order-K minors of a rational matrix file
    Minors {
        file: PathBuf,
        #[arg(long)]
        size: usize,
        /// Only minors with equal row and column sets
        #[arg(long)]
        principal: bool,
        /// Emit a JSON array instead of text lines
        #[arg(long)]
        json: bool,
    },
    /// Provable lower and sampled upper bounds on the minimum rank of a pattern
    MinrankBounds {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 10)]
        magnitude: u32,
    },
    /// Sample a random realization of a pattern (matrix file format on stdout)
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        magnitude: u32,
        /// Force all four 2x2 blocks singular (built-in pattern only)
        #[arg(long)]
        min_rank: bool,
    },
    /// Search for a rank certificate of a pattern and print it as JSON
    Certify {
        file: PathBuf,
        /// 2x2 block written as R1,R2xC1,C2 (for example 1,2x1,2); switches to
        /// a block-pivot certificate instead of a monomial-minor one
        #[arg(long)]
        block: Option<String>,
        /// Minor order for the block-pivot search
        #[arg(long, default_value_t = 7)]
        ambient: usize,
    },
}

enum CliError {
    /// Bad file, bad syntax, out-of-range argument: exit 2.
    Input(String),
    /// A check or search that can legitimately fail did: exit 1.
    Check(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> CliError {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    // Restore the default SIGPIPE disposition so piping into e.g. `head`
    // terminates the process quietly instead of panicking on a failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify { seed, trials, magnitude, json } => cmd_verify(seed, trials, magnitude, json.as_deref()),
        Command::Rank { file } => {
            println!("{}", load_matrix(&file)?.rank());
            Ok(ExitCode::SUCCESS)
        }
        Command::Det { file } => {
            let det = load_matrix(&file)?.determinant().map_err(CliError::input)?;
            println!("{}", format_rational(&det));
            Ok(ExitCode::SUCCESS)
        }
        Command::Charpoly { file } => {
            let cp = load_matrix(&file)?.char_poly().map_err(CliError::input)?;
            println!("{cp}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Diag { file } => {
            let d = load_matrix(&file)?.is_diagonalizable().map_err(CliError::input)?;
            println!("diagonalizable: {d}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Minors { file, size, principal, json } => cmd_minors(&file, size, principal, json),
        Command::MinrankBounds { file, seed, trials, magnitude } => {
            cmd_minrank_bounds(&file, seed, trials, magnitude)
        }
        Command::Sample { file, seed, magnitude, min_rank } => cmd_sample(&file, seed, magnitude, min_rank),
        Command::Certify { file, block, ambient } => cmd_certify(&file, block.as_deref(), ambient),
    }
}

fn load_matrix(path: &Path) -> Result<ExactMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    ExactMatrix::parse(&text).map_err(CliError::input)
}

fn load_pattern(path: &Path) -> Result<SignPattern, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    SignPattern::parse(&text).map_err(CliError::input)
}

fn sample_config(seed: u64, magnitude: u32, trials: u32) -> Result<SampleConfig, CliError> {
    SampleConfig::new(seed, magnitude, trials).map_err(CliError::input)
}

fn cmd_verify(seed: u64, trials: u32, magnitude: u32, json: Option<&Path>) -> Result<ExitCode, CliError> {
    let cfg = sample_config(seed, magnitude, trials)?;
    let report = verify_builtin_claims(&cfg);
    println!("pattern sha256: {}", report.pattern_sha256);
    println!("seed={} trials={} magnitude={}", report.seed, report.trials, report.magnitude);
    for claim in &report.claims {
        let tag = match claim.status {
            ClaimStatus::Pass => "PASS",
            ClaimStatus::Fail => "FAIL",
        };
        println!("{} {} ({} ms)  {}", claim.claim_id, tag, claim.elapsed_ms, claim.statement);
        if claim.status == ClaimStatus::Fail {
            println!("   evidence: {}", claim.evidence);
        }
    }
    println!("overall: {}", if report.passed() { "PASS" } else { "FAIL" });
    if let Some(path) = json {
        let body = report.to_json_pretty();
        if path.as_os_str() == "-" {
            println!("{body}");
        } else {
            fs::write(path, body.as_bytes())
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_minors(file: &Path, size: usize, principal: bool, json: bool) -> Result<ExitCode, CliError> {
    let m = load_matrix(file)?;
    let minors: Vec<(IndexSet, IndexSet, BigRational)> = if principal {
        m.principal_minors(size)
            .map_err(CliError::input)?
            .into_iter()
            .map(|(s, d)| (s.clone(), s, d))
            .collect()
    } else {
        if size < 1 || size > m.n_rows().min(m.n_cols()) {
            return Err(CliError::Input(format!(
                "minor order {size} out of range for a {}x{} matrix",
                m.n_rows(),
                m.n_cols()
            )));
        }
        let mut out = Vec::new();
        for rows in (1..=m.n_rows()).combinations(size) {
            let rows = IndexSet::new(rows).expect("combinations are strictly increasing");
            for cols in (1..=m.n_cols()).combinations(size) {
                let cols = IndexSet::new(cols).expect("combinations are strictly increasing");
                let det = m.minor(&rows, &cols).map_err(CliError::input)?;
                out.push((rows.clone(), cols, det));
            }
        }
        out
    };
    if json {
        let arr: Vec<serde_json::Value> = minors
            .iter()
            .map(|(r, c, d)| {
                serde_json::json!({
                    "rows": r.as_slice(),
                    "cols": c.as_slice(),
                    "value": format_rational(d),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&arr).expect("minor list serializes"));
    } else {
        for (r, c, d) in &minors {
            println!("{r}x{c}: {}", format_rational(d));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_minrank_bounds(file: &Path, seed: u64, trials: u32, magnitude: u32) -> Result<ExitCode, CliError> {
    let p = load_pattern(file)?;
    let (bound, cert) = monomial_minor_bound(&p);
    match cert {
        Some(c) => {
            let pairs: String = c.matching.iter().map(|(r, col)| format!("({r}->{col})")).collect();
            println!(
                "lower={bound} (monomial certificate rows={} cols={} matching={} sign={:+})",
                c.rows, c.cols, pairs, c.sign
            );
        }
        None => println!("lower={bound} (no certificate: zero pattern)"),
    }
    let cfg = sample_config(seed, magnitude, trials)?;
    let upper = empirical_min_rank(&p, &cfg).map_err(CliError::input)?;
    println!("upper={upper} (realization; trials={trials}, seed={seed}, magnitude={magnitude})");
    Ok(ExitCode::SUCCESS)
}

fn cmd_sample(file: &Path, seed: u64, magnitude: u32, min_rank: bool) -> Result<ExitCode, CliError> {
    let p = load_pattern(file)?;
    let cfg = sample_config(seed, magnitude, 1)?;
    let real = if min_rank {
        sample_min_rank_realization(&p, &cfg).map_err(|e| match e {
            RealizeError::RankAssertion { .. } => CliError::Check(e.to_string()),
            other => CliError::input(other),
        })?
    } else {
        sample_realization(&p, &cfg)
    };
    println!("{}", real.matrix);
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(file: &Path, block: Option<&str>, ambient: usize) -> Result<ExitCode, CliError> {
    let p = load_pattern(file)?;
    let cert = match block {
        Some(spec) => {
            let block = parse_block(spec)?;
            match block_pivot_certificate(&p, &block, ambient).map_err(CliError::input)? {
                Some(c) => Certificate::BlockPivot(c),
                None => {
                    return Err(CliError::Check(format!(
                        "no block-pivot certificate for block {block} at ambient order {ambient}"
                    )))
                }
            }
        }
        None => {
            let (bound, cert) = monomial_minor_bound(&p);
            match cert {
                Some(c) => Certificate::MonomialMinor(c),
                None => {
                    return Err(CliError::Check(format!(
                        "no monomial-minor certificate found (bound {bound})"
                    )))
                }
            }
        }
    };
    println!("{}", serde_json::to_string_pretty(&cert).expect("certificate serializes"));
    Ok(ExitCode::SUCCESS)
}

/// Parses `R1,R2xC1,C2`, for example `1,2x1,2`.
fn parse_block(spec: &str) -> Result<Block, CliError> {
    let bad = || CliError::Input(format!("bad block `{spec}`, expected R1,R2xC1,C2 like 1,2x1,2"));
    let (rows, cols) = spec.split_once('x').ok_or_else(bad)?;
    let parse_pair = |s: &str| -> Result<IndexSet, CliError> {
        let nums: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        IndexSet::new(nums.map_err(|_| bad())?).map_err(|_| bad())
    };
    Block::new(parse_pair(rows)?, parse_pair(cols)?).map_err(|_| bad())
}
