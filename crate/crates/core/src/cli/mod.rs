//! The `ffvar` command line: variance runs, verification suites, parameter
//! sweeps and sieve-cache maintenance.
//!
//! Exit codes: 0 success, 1 verification failure or corrupt cache, 2 bad
//! parameters, 3 direct/character gap above tolerance, 4 budget exceeded.

mod output;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::FactorTable;
use crate::bounds::{large_factor_sum_ratio, smooth_sum_ratio};
use crate::error::{Budget, Error, Result};
use crate::field::{make_field, Field};
use crate::sieve::{sieve_irreducibles, CacheStatus, SieveCache};
use crate::variance::{theorem_ratio, variance_report, within_tolerance, ArithmeticFunction, Mode};

pub use output::{Format, SweepRow, VarianceRow};
pub use verify::{Suite, SuiteOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GAP: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

pub const CACHE_DIR_ENV: &str = "FFVAR_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "ffvar", version, about = "Short-interval variance of the Liouville function over F_q[t]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Variance of one function at one (q, N, h).
    Variance(VarianceArgs),
    /// Run the exact identity and inequality suites.
    Verify(VerifyArgs),
    /// Theorem ratio and split-sum ratios over an (N, h) grid.
    Sweep(SweepArgs),
    /// Build or validate the irreducible-polynomial cache.
    Cache(CacheArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Field characteristic.
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Extension degree; q = p^k.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Largest number of objects one enumeration may touch.
    #[arg(long, default_value_t = Budget::DEFAULT.0)]
    pub budget: u64,
    /// Directory for sieve cache files (overrides FFVAR_CACHE_DIR).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VarianceArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub h: usize,
    #[arg(long, default_value = "liouville")]
    pub function: ArithmeticFunction,
    #[arg(long, default_value = "both")]
    pub mode: Mode,
    /// Relative tolerance for the direct/character gap.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict to one field; all of q = 2, 3 otherwise.
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Run only these suites.
    #[arg(long, value_enum)]
    pub suite: Vec<Suite>,
    /// Largest degree the suites enumerate.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Seed for the random mean-value trials.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random trials per (modulus, degree) pair.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Corrupt one stored Liouville value to confirm the suites notice.
    #[arg(long)]
    pub self_test_fault: bool,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Inclusive range `lo:hi` (or a single value).
    #[arg(long = "N", value_parser = parse_range)]
    pub n: (usize, usize),
    #[arg(long, value_parser = parse_range)]
    pub h: (usize, usize),
    /// Keep only grid points with h <= N-2, where the character side exists.
    #[arg(long)]
    pub char_grid: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct CacheArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 12)]
    pub maxdeg: usize,
    /// Validate the existing file instead of building.
    #[arg(long)]
    pub check: bool,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = Budget::DEFAULT.0)]
    pub budget: u64,
}

impl ValueEnum for ArithmeticFunction {
    fn value_variants<'a>() -> &'a [Self] {
        &[ArithmeticFunction::Liouville, ArithmeticFunction::Moebius, ArithmeticFunction::Unit]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

impl ValueEnum for Mode {
    fn value_variants<'a>() -> &'a [Self] {
        &[Mode::Direct, Mode::Character, Mode::Both]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        let name = match self {
            Mode::Direct => "direct",
            Mode::Character => "character",
            Mode::Both => "both",
        };
        Some(clap::builder::PossibleValue::new(name))
    }
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once(':') {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => {
            let v = parse(s)?;
            Ok((v, v))
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::CorruptCache { .. } | Error::Io(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
}

/// Field, sieve and factor table for one run.
pub struct Workspace {
    pub field: Field,
    pub cache: SieveCache,
    pub table: FactorTable,
    pub budget: Budget,
}

impl Workspace {
    pub fn new(field: Field, max_degree: usize, run: &RunArgs) -> Result<Workspace> {
        let budget = Budget(run.budget);
        let depth = max_degree.max(1);
        let cache = match cache_dir(run.cache_dir.as_deref()) {
            Some(dir) => {
                let (cache, status, path) = SieveCache::load_or_build(&field, depth, &dir, budget)?;
                if let CacheStatus::Rebuilt(reason) = status {
                    eprintln!("rebuilt {}: {reason}", path.display());
                }
                cache
            }
            None => sieve_irreducibles(&field, depth, budget)?,
        };
        let table = FactorTable::build(&cache, max_degree, budget)?;
        Ok(Workspace {
            field,
            cache,
            table,
            budget,
        })
    }
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    if threads == 0 {
        return Err(Error::Precondition("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

pub fn cmd_variance(args: &VarianceArgs) -> Result<i32> {
    if args.tolerance.is_nan() || args.tolerance <= 0.0 {
        return Err(Error::Precondition("--tolerance must be positive".into()));
    }
    if args.h >= args.n {
        return Err(Error::Precondition(format!("need h < N, got h={}, N={}", args.h, args.n)));
    }
    if args.mode != Mode::Direct && args.h + 2 > args.n {
        return Err(Error::Precondition(format!(
            "character mode needs h <= N-2, got h={}, N={}",
            args.h, args.n
        )));
    }
    let field = make_field(args.field.p, args.field.k)?;
    let pool = thread_pool(args.run.threads)?;
    let ws = Workspace::new(field, args.n, &args.run)?;
    let report = pool.install(|| variance_report(&ws.table, args.function, args.n, args.h, args.mode, ws.budget))?;
    let row = VarianceRow::from_report(&report);
    output::write_rows(sink(args.out.as_deref())?, args.format, &[row])?;
    let gap_ok = match (&report.direct, report.charside) {
        (Some(d), Some(c)) => within_tolerance(num_traits::ToPrimitive::to_f64(d).unwrap_or(f64::INFINITY), c, args.tolerance),
        _ => true,
    };
    if !gap_ok {
        eprintln!("gap {} exceeds tolerance {}", report.abs_gap.unwrap_or(f64::NAN), args.tolerance);
        return Ok(EXIT_GAP);
    }
    Ok(EXIT_OK)
}

/// Grid points `(N, h)` in row order.
pub fn sweep_grid(n: (usize, usize), h: (usize, usize), char_grid: bool) -> Vec<(usize, usize)> {
    let mut points = Vec::new();
    for big_n in n.0..=n.1 {
        for hh in h.0..=h.1 {
            if hh < big_n && (!char_grid || hh + 2 <= big_n) {
                points.push((big_n, hh));
            }
        }
    }
    points
}

pub fn sweep_rows(ws: &Workspace, grid: &[(usize, usize)]) -> Result<Vec<SweepRow>> {
    use rayon::prelude::*;
    let q = ws.field.q();
    grid.par_iter()
        .map(|&(big_n, h)| -> Result<SweepRow> {
            let f = ArithmeticFunction::Liouville;
            let direct = crate::variance::variance_direct(&ws.table, f, big_n, h)?;
            let var_direct = num_traits::ToPrimitive::to_f64(&direct).unwrap_or(f64::INFINITY);
            let char_ok = h + 2 <= big_n;
            let var_char = if char_ok {
                Some(crate::variance::variance_charside_with_budget(&ws.table, f, big_n, h, ws.budget)?)
            } else {
                None
            };
            let (bound_n5, ratio) = if h >= 1 {
                let b = (big_n as f64).powi(5) * f64::from(q).powi(h as i32) / (h * h) as f64;
                (Some(b), Some(theorem_ratio(&direct, q, big_n, h)))
            } else {
                (None, None)
            };
            let (largepf, smoothpf) = if char_ok && h >= 1 {
                let mut large: f64 = 0.0;
                for n in h + 1..=big_n {
                    large = large.max(large_factor_sum_ratio(&ws.table, big_n, n, h)?.ratio);
                }
                let mut smooth: f64 = 0.0;
                for n in 0..=big_n {
                    smooth = smooth.max(smooth_sum_ratio(&ws.table, big_n, n, h)?.ratio);
                }
                (Some(large), Some(smooth))
            } else {
                (None, None)
            };
            Ok(SweepRow {
                q,
                n: big_n,
                h,
                var_direct,
                var_char,
                bound_n5,
                ratio,
                largepf_ratio: largepf,
                smoothpf_ratio: smoothpf,
            })
        })
        .collect()
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let grid = sweep_grid(args.n, args.h, args.char_grid);
    if grid.is_empty() {
        return Err(Error::Precondition("empty (N, h) grid".into()));
    }
    let field = make_field(args.field.p, args.field.k)?;
    let pool = thread_pool(args.run.threads)?;
    let ws = Workspace::new(field, args.n.1, &args.run)?;
    let rows = pool.install(|| sweep_rows(&ws, &grid))?;
    output::write_rows(sink(args.out.as_deref())?, args.format, &rows)?;
    let best = rows
        .iter()
        .filter_map(|r| r.ratio.map(|x| (x, r.n, r.h)))
        .fold(None, |acc: Option<(f64, usize, usize)>, x| match acc {
            Some(a) if a.0 >= x.0 => Some(a),
            _ => Some(x),
        });
    match best {
        Some((x, n, h)) => eprintln!("rows={} max_ratio={x:.6e} at N={n} h={h}", rows.len()),
        None => eprintln!("rows={}", rows.len()),
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let primes: Vec<u32> = match args.p {
        Some(p) => vec![p],
        None => vec![2, 3],
    };
    let pool = thread_pool(args.run.threads)?;
    let mut fields = Vec::new();
    for &p in &primes {
        let field = make_field(p, args.k)?;
        let mut ws = Workspace::new(field, args.n_max, &args.run)?;
        if args.self_test_fault {
            verify::inject_fault(&mut ws.table)?;
        }
        fields.push(ws);
    }
    let suites = if args.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suite.clone()
    };
    let cfg = verify::VerifyConfig {
        n_max: args.n_max,
        seed: args.seed,
        trials: args.trials,
    };
    let mut failed = false;
    for suite in suites {
        let outcome = pool.install(|| verify::run_suite(suite, &fields, &cfg))?;
        match outcome {
            SuiteOutcome::Pass(detail) => println!("PASS {suite} {detail}"),
            SuiteOutcome::Fail(example) => {
                failed = true;
                println!("FAIL {suite} {example}");
            }
        }
    }
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}

pub fn cmd_cache(args: &CacheArgs) -> Result<i32> {
    let field = make_field(args.field.p, args.field.k)?;
    let budget = Budget(args.budget);
    let dir = cache_dir(args.cache_dir.as_deref()).unwrap_or_else(|| PathBuf::from("."));
    if args.check {
        let path = dir.join(SieveCache::file_name(&field));
        let cache = match SieveCache::load(&field, &path) {
            Ok(c) => c,
            Err(e @ Error::CorruptCache { .. }) => {
                eprintln!("{e}");
                return Ok(EXIT_FAIL);
            }
            Err(e) => return Err(e),
        };
        let fresh = sieve_irreducibles(&field, cache.max_degree(), budget)?;
        if fresh != cache {
            eprintln!("{}: contents differ from a fresh sieve", path.display());
            return Ok(EXIT_FAIL);
        }
        println!("ok {} maxdeg={} count={}", path.display(), cache.max_degree(), cache.total());
        return Ok(EXIT_OK);
    }
    let (cache, status, path) = SieveCache::load_or_build(&field, args.maxdeg, &dir, budget)?;
    let verb = match status {
        CacheStatus::Loaded => "loaded".to_string(),
        CacheStatus::Built => "built".to_string(),
        CacheStatus::Rebuilt(why) => format!("rebuilt ({why})"),
    };
    println!("{verb} {} maxdeg={} count={}", path.display(), cache.max_degree(), cache.total());
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Variance(a) => cmd_variance(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Cache(a) => cmd_cache(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3:8"), Ok((3, 8)));
        assert_eq!(parse_range("5"), Ok((5, 5)));
        assert!(parse_range("a:2").is_err());
    }

    #[test]
    fn grid_shapes() {
        assert_eq!(sweep_grid((3, 8), (1, 2), false).len(), 12);
        assert!(sweep_grid((5, 3), (1, 2), false).is_empty());
        let g = sweep_grid((3, 12), (1, 4), true);
        assert!(g.iter().all(|&(n, h)| h + 2 <= n));
        assert_eq!(g.first(), Some(&(3, 1)));
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::BudgetExceeded { needed: 2, limit: 1 }), EXIT_BUDGET);
        assert_eq!(exit_code(&Error::Precondition(String::new())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::NotPrime(4)), EXIT_USAGE);
    }
}
