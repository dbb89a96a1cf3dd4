//! `flagcoh`: integral cohomology of `L(m,0,…,0,-n-d)` on `SL_{d+1}/Q`.
//!
//! Exit status: 0 when every check passes, 1 on a mathematical mismatch,
//! 2 on invalid arguments.

mod checks;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use flagcoh::lattice::enumerate_dominant_s;
use flagcoh::reduced_matrix::weight_space_report;
use flagcoh::snf::is_prime;
use flagcoh::sweep;
use flagcoh::{Execution, STuple};

use checks::CheckLine;
use report::{emit, Format, Record};

#[derive(Parser)]
#[command(name = "flagcoh", version, about = "Cohomology of line bundles on SL_{d+1}/Q via Smith normal form")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Weights {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    m: i64,
    #[arg(long)]
    n: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Weight spaces of H^{d-1} and H^d.
    Cohomology {
        #[command(flatten)]
        w: Weights,
        /// Single weight, as comma-separated s₁,…,s_d.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s: Option<Vec<i64>>,
        /// Primes for mod-p multiplicities (repeatable).
        #[arg(long = "p")]
        primes: Vec<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Emit every dominant weight, not only those with nonzero H^d.
        #[arg(long)]
        all: bool,
    },
    /// Reduced matrices against the raw monomial map at every dominant weight.
    OracleCompare {
        #[command(flatten)]
        w: Weights,
    },
    /// Closed-form determinants against direct determinants on the wall.
    DetCheck {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n_max: i64,
    },
    /// Torsion corollaries, Doty and deficit suites over the given primes and ranks.
    Corollaries {
        #[arg(long = "p", required = true)]
        primes: Vec<u64>,
        #[arg(long = "d", required = true)]
        dims: Vec<usize>,
    },
    /// Doty's E(ap^e - 2) and the factor weights.
    Doty {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        e: Option<u32>,
    },
    /// Deficit of H²(n,-n-2) against V(r, n-2r-2) for n = ap^e + r.
    Main3 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long, default_value_t = 18)]
        n_max: i64,
    },
}

enum Outcome {
    Pass,
    Mismatch,
}

fn check_primes(primes: &[u64]) -> Result<()> {
    if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
        bail!("{p} is not prime");
    }
    Ok(())
}

fn check_rank(d: usize) -> Result<()> {
    if d < 2 {
        bail!("--d must be at least 2");
    }
    Ok(())
}

fn check_weights(w: &Weights) -> Result<()> {
    check_rank(w.d)?;
    if w.m < 0 || w.n < 0 {
        bail!("--m and --n must be nonnegative");
    }
    Ok(())
}

fn cohomology(w: &Weights, s: Option<&[i64]>, primes: &[u64], format: Format, all: bool) -> Result<Outcome> {
    check_weights(w)?;
    check_primes(primes)?;
    let reports = match s {
        Some(s) => {
            if s.len() != w.d {
                bail!("--s has {} entries, expected {}", s.len(), w.d);
            }
            let s = STuple::new(s.to_vec())?;
            vec![weight_space_report(w.m, w.n, &s).with_context(|| format!("weight s = {s}"))?]
        }
        None => {
            let weights = enumerate_dominant_s(w.m, w.n, w.d);
            let mut reports =
                sweep::try_map(Execution::Parallel, &weights, |s| weight_space_report(w.m, w.n, s))?;
            if !all {
                reports.retain(|r| {
                    if primes.is_empty() {
                        r.is_top_nonzero()
                    } else {
                        primes.iter().any(|&p| r.top_dim_mod_p(p) > 0)
                    }
                });
            }
            reports
        }
    };
    let records: Vec<Record> = reports.iter().map(|r| Record::new(r, primes)).collect();
    emit(&records, format, io::stdout().lock())?;
    Ok(Outcome::Pass)
}

fn print_lines(lines: &[CheckLine]) -> Result<Outcome> {
    let mut out = io::stdout().lock();
    for line in lines {
        serde_json::to_writer(&mut out, line)?;
        writeln!(out)?;
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    writeln!(out, "{}", serde_json::json!({ "checks": lines.len(), "failed": failed }))?;
    Ok(if failed == 0 { Outcome::Pass } else { Outcome::Mismatch })
}

fn run(cli: Cli) -> Result<Outcome> {
    #[cfg(feature = "parallel")]
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cli.jobs;
    let exec = Execution::Parallel;

    match cli.command {
        Command::Cohomology { w, s, primes, format, all } => cohomology(&w, s.as_deref(), &primes, format, all),
        Command::OracleCompare { w } => {
            check_weights(&w)?;
            print_lines(&checks::oracle_compare(w.d, w.m, w.n, exec)?)
        }
        Command::DetCheck { d, n_max } => {
            check_rank(d)?;
            print_lines(&checks::det_check(d, n_max)?)
        }
        Command::Corollaries { primes, dims } => {
            check_primes(&primes)?;
            for &d in &dims {
                check_rank(d)?;
            }
            print_lines(&checks::corollaries(&primes, &dims, exec)?)
        }
        Command::Doty { p, a, e } => {
            check_primes(&[p])?;
            let grid: Vec<(u64, u32)> = match (a, e) {
                (Some(a), Some(e)) => vec![(a, e)],
                (Some(a), None) => (1..=3).map(|e| (a, e)).collect(),
                (None, Some(e)) => (2..p).map(|a| (a, e)).collect(),
                (None, None) => checks::doty_grid(p, 3),
            };
            print_lines(&checks::doty(p, &grid)?)
        }
        Command::Main3 { p, a, e, r, n_max } => {
            check_primes(&[p])?;
            let grid: Vec<(u64, u32, i64)> = match (a, e, r) {
                (Some(a), Some(e), Some(r)) => vec![(a, e, r)],
                _ => checks::main3_grid(p, n_max)
                    .into_iter()
                    .filter(|&(ga, ge, gr)| {
                        a.is_none_or(|a| a == ga) && e.is_none_or(|e| e == ge) && r.is_none_or(|r| r == gr)
                    })
                    .collect(),
            };
            print_lines(&checks::main3(p, &grid, exec)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
