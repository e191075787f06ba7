//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad arguments,
//! 3 a resource budget was exceeded.

pub mod output;
pub mod verify;

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::census::{self, AsymptoticParams, Budget, CountReport, Kind};
use crate::divstats;
use crate::error::Error;
use crate::partitions::factorial;
use crate::primecount;
use crate::sampler;
use output::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "multab", version, about = "Exact counts and estimates for the multiplication-table problem in F_q[t] and S_n")]
pub struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Largest number of partitions a count may enumerate
    /// (default: $MULTAB_PARTITION_CAP or 25000000).
    #[arg(long, global = true)]
    pub partition_cap: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "T", alias = "t")]
    T,
}

/// A list of integers: `4`, `2..8` (inclusive), `0..64:8` (with step), or
/// comma-separated combinations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid(pub Vec<u32>);

/// Like [`Grid`], but items may also be `n/K` (that fraction of each `n`,
/// rounded down) or `all` (every `b` from 0 to `n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BGrid(Vec<BItem>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BItem {
    Value(u32),
    Fraction(u32),
    All,
}

fn parse_range(item: &str) -> Result<Vec<u32>, String> {
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("not a number: {s:?}"));
    let Some((lo, rest)) = item.split_once("..") else {
        return Ok(vec![num(item)?]);
    };
    let (hi, step) = match rest.split_once(':') {
        Some((hi, step)) => (num(hi)?, num(step)?),
        None => (num(rest)?, 1),
    };
    let lo = num(lo)?;
    if step == 0 || hi < lo {
        return Err(format!("empty range {item:?}"));
    }
    Ok((lo..=hi).step_by(step as usize).collect())
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        out.extend(parse_range(item)?);
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(Grid(out))
}

fn parse_bgrid(s: &str) -> Result<BGrid, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item == "all" {
            out.push(BItem::All);
        } else if let Some(k) = item.strip_prefix("n/") {
            let k: u32 = k.parse().map_err(|_| format!("bad fraction {item:?}"))?;
            if k == 0 {
                return Err("n/0".into());
            }
            out.push(BItem::Fraction(k));
        } else {
            out.extend(parse_range(item)?.into_iter().map(BItem::Value));
        }
    }
    Ok(BGrid(out))
}

impl BGrid {
    fn resolve(&self, n: u32) -> Vec<u32> {
        let mut out = Vec::new();
        for item in &self.0 {
            match *item {
                BItem::Value(b) => out.push(b),
                BItem::Fraction(k) => out.push(n / k),
                BItem::All => out.extend(0..=n),
            }
        }
        out
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact |H(n,b)|, |M(2n)| or |T(n,b)| over a grid.
    Count {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Field size (H and M).
        #[arg(long)]
        q: Option<u64>,
        /// Degrees: `8`, `4,6,9`, `4..12` or `4..12:2`.
        #[arg(long, value_parser = parse_grid)]
        n: Option<Grid>,
        /// Bounds: as for `--n`, plus `n/K` and `all`.
        #[arg(long, value_parser = parse_bgrid)]
        b: Option<BGrid>,
        /// Total degree 2n (M only).
        #[arg(long, value_parser = parse_grid)]
        deg: Option<Grid>,
    },
    /// Run the self-check suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Scope::All)]
        scope: verify::Scope,
    },
    /// Normalized ratios count·b^δ(log b)^{3/2}/total over a grid.
    Fit {
        #[arg(long, value_enum, default_value_t = KindArg::T)]
        kind: KindArg,
        /// Field size (H and M).
        #[arg(long)]
        q: Option<u64>,
        /// Degrees: `8`, `4,6,9`, `4..12` or `4..12:2`.
        #[arg(long, value_parser = parse_grid)]
        n: Grid,
        /// Bounds: as for `--n`, plus `n/K` and `all`.
        #[arg(long, value_parser = parse_bgrid, default_value = "n/2")]
        b: BGrid,
        /// Whitespace-separated output for gnuplot.
        #[arg(long)]
        gnuplot: bool,
    },
    /// Prime-degree blocks of mass log 2, or the weighted block-count family.
    Construct {
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Number of degree intervals to list.
        #[arg(long, default_value_t = 12)]
        intervals: usize,
        /// Build the block-count family instead of listing blocks.
        #[arg(long)]
        family: bool,
        /// Degree bound `b` of the family.
        #[arg(long, requires = "family")]
        b: Option<u64>,
        /// Block offset `M` (default: smallest `M` that meets the degree cap).
        #[arg(long = "M", requires = "family")]
        m: Option<u32>,
    },
    /// Monte-Carlo density estimate with a 95% Wilson interval.
    Sample {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Prime field size (H only).
        #[arg(long, visible_alias = "p")]
        q: Option<u32>,
        /// Degree.
        #[arg(long)]
        n: u32,
        /// Bound.
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// RNG seed. Results do not depend on the thread count.
        #[arg(long, default_value_t = sampler::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(Error::Resource { .. } | Error::Undecidable) => EXIT_RESOURCE,
            CliError::Lib(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_CHECK_FAILED,
        }
    }
}

/// A rendered result and whether it reports a failed check.
pub struct Outcome {
    pub table: Table,
    pub gnuplot: bool,
    pub failed: bool,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Outcome {
            table,
            gnuplot: false,
            failed: false,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.table.to_json(),
            Format::Csv if self.gnuplot => self.table.to_gnuplot(),
            Format::Csv => self.table.to_csv(),
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// Runs `cli` and returns the process exit code. Output
/// goes to `--output` or stdout, diagnostics to stderr.
pub fn execute(cli: &Cli) -> i32 {
    let result = match cli.threads {
        Some(0) => usage("--threads must be ≥ 1"),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| run(cli)),
            Err(e) => usage(format!("thread pool: {e}")),
        },
        None => run(cli),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("multab: {e}");
            return e.exit_code();
        }
    };
    let text = outcome.render(cli.format);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("multab: {}", CliError::Io(e));
        return EXIT_CHECK_FAILED;
    }
    if outcome.failed {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = match cli.partition_cap {
        Some(0) => return usage("--partition-cap must be ≥ 1"),
        Some(cap) => Budget { partition_cap: cap },
        None => Budget::default(),
    };
    match &cli.command {
        Command::Count { kind, q, n, b, deg } => cmd_count(*kind, *q, n.as_ref(), b.as_ref(), deg.as_ref(), &budget),
        Command::Verify { scope } => Ok(cmd_verify(*scope, &verify::VerifyOptions::default())),
        Command::Fit { kind, q, n, b, gnuplot } => {
            let mut out = cmd_fit(*kind, *q, n, b, &budget)?;
            out.gnuplot = *gnuplot;
            Ok(out)
        }
        Command::Construct {
            q,
            intervals,
            family,
            b,
            m,
        } => {
            if *family {
                let Some(b) = b else {
                    return usage("--family needs --b");
                };
                cmd_family(*q, *b, *m)
            } else {
                cmd_intervals(*q, *intervals)
            }
        }
        Command::Sample {
            kind,
            q,
            n,
            b,
            trials,
            seed,
        } => cmd_sample(*kind, *q, *n, *b, *trials, *seed),
    }
}

const COUNT_COLUMNS: [&str; 8] = ["kind", "q", "n", "b", "count", "density", "predicted", "ratio"];

fn count_row(r: &CountReport) -> Vec<Cell> {
    vec![
        Cell::Str(r.kind.to_string()),
        r.q.into(),
        r.n.into(),
        r.b.into(),
        Cell::Str(r.count.to_string()),
        r.density.into(),
        r.predicted.into(),
        r.ratio.into(),
    ]
}

fn require_q(kind: KindArg, q: Option<u64>) -> Result<Option<u64>, CliError> {
    match (kind, q) {
        (KindArg::T, Some(_)) => usage("--q does not apply to --kind T"),
        (KindArg::T, None) => Ok(None),
        (_, None) => usage("--kind H and M need --q"),
        (_, Some(q)) => Ok(Some(q)),
    }
}

/// Reports for `kind ∈ {H, T}` at one `n` and several `b`.
fn reports_at(kind: KindArg, q: Option<u64>, n: u32, bs: &[u32], budget: &Budget) -> Result<Vec<CountReport>, CliError> {
    if let Some(&b) = bs.iter().find(|&&b| b > n) {
        return usage(format!("b = {b} exceeds n = {n}"));
    }
    let counts = match (kind, q) {
        (KindArg::T, _) => census::count_t_many(n, bs, budget)?,
        (_, Some(q)) => census::count_h_many(q, n, bs, budget)?,
        _ => unreachable!("q checked by caller"),
    };
    let (k, total) = match q {
        Some(q) => (Kind::H, num_bigint::BigUint::from(q).pow(n)),
        None => (Kind::T, factorial(n)),
    };
    Ok(bs
        .iter()
        .zip(counts)
        .map(|(&b, count)| CountReport::new(k, q, n, b, count, total.clone()))
        .collect())
}

fn cmd_count(
    kind: KindArg,
    q: Option<u64>,
    n: Option<&Grid>,
    b: Option<&BGrid>,
    deg: Option<&Grid>,
    budget: &Budget,
) -> Result<Outcome, CliError> {
    let q = require_q(kind, q)?;
    let mut table = Table::new("count", &COUNT_COLUMNS);
    if kind == KindArg::M {
        if n.is_some() || b.is_some() {
            return usage("--kind M takes --deg, not --n/--b");
        }
        let Some(deg) = deg else {
            return usage("--kind M needs --deg");
        };
        let q = q.expect("checked");
        for &d in &deg.0 {
            if d % 2 != 0 {
                return usage(format!("--deg must be even, got {d}"));
            }
            table.push(count_row(&census::count_m_with_budget(q, d, budget)?));
        }
        return Ok(Outcome::ok(table));
    }
    if deg.is_some() {
        return usage("--deg applies only to --kind M");
    }
    let (Some(n), Some(b)) = (n, b) else {
        return usage("--kind H and T need --n and --b");
    };
    for &n in &n.0 {
        for r in reports_at(kind, q, n, &b.resolve(n), budget)? {
            table.push(count_row(&r));
        }
    }
    Ok(Outcome::ok(table))
}

pub fn cmd_verify(scope: verify::Scope, opts: &verify::VerifyOptions) -> Outcome {
    let results = verify::run(scope, opts);
    let failed = results.iter().any(|r| !r.passed);
    let mut table = Table::new("verify", &["name", "scope", "passed", "detail"]);
    for r in &results {
        table.push(vec![
            Cell::Str(r.name.into()),
            Cell::Str(r.scope.name().into()),
            r.passed.into(),
            Cell::Str(r.detail.clone()),
        ]);
    }
    table.meta.insert("scope".into(), Value::String(scope.name().into()));
    table.meta.insert("passed".into(), Value::Bool(!failed));
    let failures: Vec<Value> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| Value::String(r.name.into()))
        .collect();
    table.meta.insert("failures".into(), Value::Array(failures));
    Outcome {
        table,
        gnuplot: false,
        failed,
    }
}

fn cmd_fit(kind: KindArg, q: Option<u64>, n: &Grid, b: &BGrid, budget: &Budget) -> Result<Outcome, CliError> {
    if kind == KindArg::M {
        return usage("fit supports --kind H and T");
    }
    let q = require_q(kind, q)?;
    let params = AsymptoticParams::default();
    let mut table = Table::new("fit", &["n", "b", "count", "predicted", "ratio"]);
    table.preamble.push(format!("delta = {}", params.delta_6()));
    table.preamble.push(match q {
        Some(q) => format!("kind = H, q = {q}"),
        None => "kind = T".into(),
    });
    let mut lo = f64::INFINITY;
    let mut hi = 0f64;
    for &n in &n.0 {
        let bs = b.resolve(n);
        if let Some(&b) = bs.iter().find(|&&b| b < 2) {
            return usage(format!("fit needs b ≥ 2, got b = {b} at n = {n}"));
        }
        for r in reports_at(kind, q, n, &bs, budget)? {
            let ratio = r.ratio.expect("b ≥ 2");
            lo = lo.min(ratio);
            hi = hi.max(ratio);
            table.push(vec![
                r.n.into(),
                r.b.into(),
                Cell::Str(r.count.to_string()),
                r.predicted.into(),
                ratio.into(),
            ]);
        }
    }
    table
        .preamble
        .push(format!("ratio max/min = {}", output::fmt15(hi / lo)));
    Ok(Outcome::ok(table))
}

fn cmd_intervals(q: u64, j: usize) -> Result<Outcome, CliError> {
    if j == 0 {
        return usage("--intervals must be ≥ 1");
    }
    let iv = primecount::build_degree_intervals(q, j)?;
    let mut table = Table::new("construct", &["j", "start", "lambda", "mass_lo", "mass_hi", "overflow"]);
    table.preamble.push(format!("q = {q}"));
    table
        .preamble
        .push(format!("growth constant K = {}", output::fmt15(iv.growth_constant())));
    for (i, block) in iv.intervals().iter().enumerate() {
        table.push(vec![
            ((i + 1) as u64).into(),
            block.start.into(),
            block.end.into(),
            block.mass.lo.into(),
            block.mass.hi.into(),
            block.overflow.into(),
        ]);
    }
    Ok(Outcome::ok(table))
}

fn cmd_family(q: u64, b: u64, m: Option<u32>) -> Result<Outcome, CliError> {
    let fam = match m {
        Some(m) => divstats::build_lower_bound_family(q, b, m),
        None => divstats::build_lower_bound_family_auto(q, b),
    };
    let fam = fam.map_err(|e| match e {
        Error::InvalidArgument(msg) => CliError::Usage(msg),
        e => CliError::Lib(e),
    })?;
    let mut table = Table::new(
        "construct",
        &[
            "q",
            "b",
            "M",
            "k",
            "J",
            "size",
            "min_f",
            "max_degree",
            "degree_cap_ok",
            "cap_violations",
            "weighted_sum",
            "ratio_factorial",
            "ratio_power",
            "growth_constant",
        ],
    );
    let bounds: Vec<String> = fam.boundaries.iter().map(u32::to_string).collect();
    table.preamble.push(format!("lambda = {}", bounds.join(" ")));
    table.push(vec![
        fam.q.into(),
        fam.b.into(),
        fam.m.into(),
        fam.k.into(),
        fam.j.into(),
        fam.size.into(),
        fam.min_f.into(),
        fam.max_degree.into(),
        fam.degree_cap_ok.into(),
        fam.cap_violations.into(),
        fam.weighted_sum.into(),
        fam.ratio_factorial.into(),
        fam.ratio_power.into(),
        fam.growth_constant.into(),
    ]);
    Ok(Outcome::ok(table))
}

fn cmd_sample(kind: KindArg, q: Option<u32>, n: u32, b: u32, trials: u64, seed: u64) -> Result<Outcome, CliError> {
    if trials == 0 {
        return usage("--trials must be ≥ 1");
    }
    if b > n {
        return usage(format!("b = {b} exceeds n = {n}"));
    }
    let est = match (kind, q) {
        (KindArg::T, None) => sampler::estimate_t_density(n, b, trials, seed)?,
        (KindArg::H, Some(p)) => sampler::estimate_h_density(p, n, b, trials, seed)?,
        (KindArg::T, Some(_)) => return usage("--q does not apply to --kind T"),
        (KindArg::H, None) => return usage("--kind H needs --q (a prime)"),
        (KindArg::M, _) => return usage("sample supports --kind H and T"),
    };
    let shape = AsymptoticParams::default().shape(b);
    let mut columns = COUNT_COLUMNS.to_vec();
    columns.extend(["trials", "seed", "ci_low", "ci_high"]);
    let mut table = Table::new("sample", &columns);
    table.push(vec![
        Cell::Str(est.kind.to_string()),
        est.q.into(),
        est.n.into(),
        est.b.into(),
        Cell::Str(est.hits.to_string()),
        est.estimate.into(),
        (est.trials as f64 / shape).into(),
        (b >= 2).then(|| est.estimate * shape).into(),
        est.trials.into(),
        est.seed.into(),
        est.ci_low.into(),
        est.ci_high.into(),
    ]);
    Ok(Outcome::ok(table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("multab").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    fn csv(args: &[&str]) -> String {
        run_args(args).unwrap().render(Format::Csv)
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("4").unwrap().0, [4]);
        assert_eq!(parse_grid("2..5,9").unwrap().0, [2, 3, 4, 5, 9]);
        assert_eq!(parse_grid("0..64:16").unwrap().0, [0, 16, 32, 48, 64]);
        assert!(parse_grid("5..2").is_err());
        assert!(parse_grid("x").is_err());
        assert_eq!(parse_bgrid("n/2,1").unwrap().resolve(9), [4, 1]);
        assert_eq!(parse_bgrid("all").unwrap().resolve(2), [0, 1, 2]);
    }

    #[test]
    fn count_rows() {
        let out = csv(&["count", "--kind", "H", "--q", "2", "--n", "4", "--b", "2"]);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("kind,q,n,b,count,density,predicted,ratio"));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&row[..6], ["H", "2", "4", "2", "9", "0.5625"]);
        let out = csv(&["count", "--kind", "T", "--n", "4", "--b", "2"]);
        assert!(out.lines().nth(1).unwrap().starts_with("T,,4,2,10,"));
        let m = csv(&["count", "--kind", "M", "--q", "2", "--deg", "4"]);
        let h = csv(&["count", "--kind", "H", "--q", "2", "--n", "4", "--b", "2"]);
        assert_eq!(m.replacen("\nM,", "\nH,", 1), h);
    }

    #[test]
    fn usage_errors() {
        for args in [
            &["count", "--kind", "H", "--n", "4", "--b", "2"][..],
            &["count", "--kind", "T", "--n", "4", "--b", "5"],
            &["count", "--kind", "M", "--q", "2", "--deg", "5"],
            &["fit", "--n", "8", "--b", "1"],
            &["sample", "--kind", "H", "--n", "4", "--b", "2"],
        ] {
            let err = run_args(args).err().unwrap();
            assert_eq!(err.exit_code(), EXIT_USAGE, "{args:?}");
        }
    }

    #[test]
    fn resource_errors() {
        let cli = Cli::try_parse_from(["multab", "--partition-cap", "10", "count", "--kind", "T", "--n", "30", "--b", "3"]).unwrap();
        assert_eq!(run(&cli).err().unwrap().exit_code(), EXIT_RESOURCE);
    }

    #[test]
    fn fit_header() {
        let out = csv(&["fit", "--n", "8,12", "--b", "n/2"]);
        assert!(out.starts_with("# delta = 0.086071\n"));
        let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows[0], "n,b,count,predicted,ratio");
        for row in &rows[1..] {
            let ratio: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
            assert!(ratio > 0.0);
        }
    }

    #[test]
    fn construct_outputs() {
        let out = csv(&["construct", "--q", "2", "--intervals", "12"]);
        let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), 13);
        assert!(rows[1].starts_with("1,1,1,") && rows[1].ends_with(",true"));
        let out = csv(&["construct", "--family", "--q", "2", "--b", "1024", "--M", "4"]);
        let row = out.lines().last().unwrap();
        assert!(row.starts_with("2,1024,4,2,5,5,"), "{row}");
    }

    #[test]
    fn sample_columns() {
        let out = csv(&["sample", "--kind", "T", "--n", "10", "--b", "3", "--trials", "1000", "--seed", "1"]);
        assert!(out.starts_with("kind,q,n,b,count,density,predicted,ratio,trials,seed,ci_low,ci_high\n"));
    }

    #[test]
    fn verify_detects_faulty_multichoose() {
        fn off_by_one(n: &num_bigint::BigUint, k: u32) -> num_bigint::BigUint {
            crate::series::multichoose(&(n + 1u32), k)
        }
        let out = cmd_verify(verify::Scope::Primecount, &verify::VerifyOptions { multichoose: off_by_one });
        assert!(out.failed);
        let v = out.table.to_json_value();
        assert_eq!(v["failures"], serde_json::json!(["count_with_type"]));
    }
}
