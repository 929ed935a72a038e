//! Command-line interface: expansions, dimensions, grid scans, worked-example
//! fixtures, and brute-force oracle reports.
//!
//! Exit codes: 0 on success, 1 on fixture failures, 2 on invalid input,
//! 3 on numerical failure (bracket/convergence problems).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::expansions::{BasePair, ExpansionError};
use crate::kneading::{
    apply_substitution, dimension, entropy, expansion_summary, univoque_dimension, CaseTag,
    DimensionResult, KneadingError, Substitution,
};
use crate::oracle::{moran_estimate, report, OracleError, OracleReport};
use crate::sequences::{EventuallyPeriodicSequence, SequenceError, Word};
use crate::subshift::{is_admissible, Hole, SubshiftError};

#[derive(Parser)]
#[command(
    name = "univoque",
    version,
    about = "Unique-expansion subshifts for two real bases: entropy and Hausdorff dimension"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,

    /// Emit CSV (scan output defaults to CSV already)
    #[arg(long, global = true)]
    csv: bool,

    /// Depth for brute-force oracle estimates
    #[arg(long, global = true, env = "UNIVOQUE_DEPTH", default_value_t = 12)]
    depth: usize,

    /// Orbit-recurrence tolerance for the expansion algorithms
    #[arg(long, global = true, env = "UNIVOQUE_TOL", default_value_t = 1e-12)]
    tol: f64,

    /// Truncation depth for expansions without a detected recurrence
    #[arg(
        long,
        global = true,
        env = "UNIVOQUE_EXPANSION_DEPTH",
        default_value_t = crate::expansions::DEFAULT_DEPTH_CAP
    )]
    expansion_depth: usize,

    /// Worker threads for grid scans (defaults to the available parallelism)
    #[arg(long, global = true, env = "UNIVOQUE_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Quasi-greedy/quasi-lazy expansions and the extremal pair of a base pair
    Expand { q0: f64, q1: f64 },

    /// Dimension and entropy for a base pair, or for an explicit hole
    Dim {
        q0: f64,
        q1: f64,
        /// Hole endpoints as sequence literals, e.g. --hole "(011)" "(10)"
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        hole: Option<Vec<String>>,
        /// Append a brute-force Moran estimate at --depth
        #[arg(long)]
        oracle: bool,
    },

    /// Scan a grid of base pairs; CSV by default, JSON with --json
    Scan {
        /// q0 range as lo:hi:steps
        #[arg(long, value_name = "LO:HI:STEPS")]
        q0: String,
        /// q1 range as lo:hi:steps
        #[arg(long, value_name = "LO:HI:STEPS")]
        q1: String,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append adjacent-cell jump statistics
        #[arg(long)]
        continuity: bool,
    },

    /// Run the worked-example regression fixtures
    Fixtures,

    /// Brute-force oracle report for an explicit hole
    Oracle {
        q0: f64,
        q1: f64,
        /// Hole endpoints as sequence literals
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        hole: Vec<String>,
    },
}

/// Exit status plus a message for anything that is not plain success.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<ExpansionError> for CliError {
    fn from(e: ExpansionError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<SubshiftError> for CliError {
    fn from(e: SubshiftError) -> Self {
        match e {
            SubshiftError::ReductionCap(_) => CliError::numerical(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<KneadingError> for CliError {
    fn from(e: KneadingError) -> Self {
        match e {
            KneadingError::Bracket { .. } | KneadingError::NoRoot { .. } => {
                CliError::numerical(e.to_string())
            }
            KneadingError::Subshift(inner) => inner.into(),
            KneadingError::Expansion(inner) => inner.into(),
            KneadingError::Sequence(inner) => inner.into(),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Subshift(inner) => inner.into(),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::numerical(format!("io error: {e}"))
    }
}

/// Parses and runs the process arguments; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version via "errors" that should exit 0.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Expand { q0, q1 } => {
            cmd_expand(cli, *q0, *q1)?;
            Ok(0)
        }
        Command::Dim {
            q0,
            q1,
            hole,
            oracle,
        } => {
            cmd_dim(cli, *q0, *q1, hole.as_deref(), *oracle)?;
            Ok(0)
        }
        Command::Scan {
            q0,
            q1,
            out,
            continuity,
        } => {
            cmd_scan(cli, q0, q1, out.as_deref(), *continuity)?;
            Ok(0)
        }
        Command::Fixtures => cmd_fixtures(cli),
        Command::Oracle { q0, q1, hole } => {
            cmd_oracle(cli, *q0, *q1, hole)?;
            Ok(0)
        }
    }
}

fn base_pair(q0: f64, q1: f64) -> Result<BasePair, CliError> {
    Ok(BasePair::new(q0, q1)?)
}

fn parse_hole(spec: &[String]) -> Result<Hole, CliError> {
    if spec.len() != 2 {
        return Err(CliError::input("--hole takes exactly two sequences"));
    }
    let a: EventuallyPeriodicSequence = spec[0].parse()?;
    let b: EventuallyPeriodicSequence = spec[1].parse()?;
    Ok(Hole::new(a, b)?)
}

/// Entropy of the subshift attached to a base pair: `log 2` in the
/// full-shift regime `q1·(q0−1) ≥ q0`, otherwise the entropy of the hole
/// cut out by the quasi-greedy/quasi-lazy expansions.
fn univoque_entropy(q: &BasePair, depth_cap: usize, tol: f64) -> Result<f64, CliError> {
    if q.q1() * (q.q0() - 1.0) >= q.q0() * (1.0 - 1e-9) {
        return Ok(std::f64::consts::LN_2);
    }
    let summary = expansion_summary(q, depth_cap, tol)?;
    let h = Hole::new(summary.ell, summary.r)?;
    Ok(entropy(&h)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct ExpandOutput {
    q0: f64,
    q1: f64,
    in_regime: bool,
    a: String,
    b: String,
    ell: String,
    r: String,
    admissible: bool,
    exact: bool,
    entropy: f64,
}

fn cmd_expand(cli: &Cli, q0: f64, q1: f64) -> Result<(), CliError> {
    let q = base_pair(q0, q1)?;
    let summary = expansion_summary(&q, cli.expansion_depth, cli.tol)?;
    let ent = univoque_entropy(&q, cli.expansion_depth, cli.tol)?;
    let out = ExpandOutput {
        q0,
        q1,
        in_regime: summary.in_regime,
        a: summary.a.to_string(),
        b: summary.b.to_string(),
        ell: summary.ell.to_string(),
        r: summary.r.to_string(),
        admissible: summary.admissible,
        exact: summary.exact,
        entropy: ent,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else {
        println!("base pair        ({q0}, {q1})");
        println!("expansion regime {}", out.in_regime);
        println!("a (quasi-greedy) {}", out.a);
        println!("b (quasi-lazy)   {}", out.b);
        println!("ell (extremal)   {}", out.ell);
        println!("r (extremal)     {}", out.r);
        println!("admissible       {}", out.admissible);
        println!("exact            {}", out.exact);
        println!("entropy          {:.12e}", out.entropy);
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct DimOutput {
    q0: f64,
    q1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    hole: Option<(String, String)>,
    dimension: DimensionResult,
    entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_estimate: Option<f64>,
}

fn cmd_dim(
    cli: &Cli,
    q0: f64,
    q1: f64,
    hole_spec: Option<&[String]>,
    with_oracle: bool,
) -> Result<(), CliError> {
    let q = base_pair(q0, q1)?;
    let (result, ent, hole) = match hole_spec {
        Some(spec) => {
            let h = parse_hole(spec)?;
            let result = dimension(&h, &q)?;
            let ent = entropy(&h)?;
            (result, ent, Some(h))
        }
        None => {
            let result = univoque_dimension(&q)?;
            let ent = univoque_entropy(&q, cli.expansion_depth, cli.tol)?;
            (result, ent, None)
        }
    };
    let oracle_estimate = match (&hole, with_oracle) {
        (Some(h), true) => Some(moran_estimate(h, &q, cli.depth)?),
        (None, true) => {
            let summary = expansion_summary(&q, cli.expansion_depth, cli.tol)?;
            let h = Hole::new(summary.ell, summary.r)?;
            Some(moran_estimate(&h, &q, cli.depth)?)
        }
        _ => None,
    };
    let out = DimOutput {
        q0,
        q1,
        hole: hole.map(|h| (h.a().to_string(), h.b().to_string())),
        dimension: result,
        entropy: ent,
        oracle_estimate,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else if cli.csv {
        println!("q0,q1,dim,entropy,case_tag,exact");
        println!("{}", csv_row(&scan_row_from(&out)));
    } else {
        if let Some((a, b)) = &out.hole {
            println!("hole        ({a}, {b})");
        }
        println!("base pair   ({q0}, {q1})");
        println!("dimension   {:.12e}", out.dimension.value);
        println!("entropy     {:.12e}", out.entropy);
        println!("case        {}", out.dimension.case_tag);
        println!(
            "bracket     [{:.12e}, {:.12e}]",
            out.dimension.root_bracket.0, out.dimension.root_bracket.1
        );
        println!("residual    {:.3e}", out.dimension.diagnostics.residual);
        println!("iterations  {}", out.dimension.diagnostics.iterations);
        println!("exact       {}", out.dimension.diagnostics.exact);
        if let Some(w) = &out.dimension.diagnostics.warning {
            println!("warning     {w}");
        }
        if let Some(m) = out.oracle_estimate {
            println!("oracle      {:.12e}  (depth {})", m, cli.depth);
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ScanRow {
    q0: f64,
    q1: f64,
    dim: f64,
    entropy: f64,
    case_tag: CaseTag,
    exact: bool,
}

fn scan_row_from(out: &DimOutput) -> ScanRow {
    ScanRow {
        q0: out.q0,
        q1: out.q1,
        dim: out.dimension.value,
        entropy: out.entropy,
        case_tag: out.dimension.case_tag,
        exact: out.dimension.diagnostics.exact,
    }
}

/// CSV cell with 12 significant digits.
fn csv_float(x: f64) -> String {
    format!("{x:.11e}")
}

fn csv_row(row: &ScanRow) -> String {
    format!(
        "{},{},{},{},{},{}",
        csv_float(row.q0),
        csv_float(row.q1),
        csv_float(row.dim),
        csv_float(row.entropy),
        row.case_tag,
        row.exact
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ContinuityStats {
    /// Largest |dim difference| between cells adjacent in the q0 direction.
    max_jump_q0: f64,
    /// Largest |dim difference| between cells adjacent in the q1 direction.
    max_jump_q1: f64,
    max_jump: f64,
    step_q0: f64,
    step_q1: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ScanOutput {
    rows: Vec<ScanRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    continuity: Option<ContinuityStats>,
}

#[derive(Debug, Clone, Copy)]
struct Range {
    lo: f64,
    hi: f64,
    steps: usize,
}

impl Range {
    fn parse(spec: &str) -> Result<Range, CliError> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::input(format!(
                "range '{spec}' must have the form lo:hi:steps"
            )));
        }
        let lo: f64 = parts[0]
            .parse()
            .map_err(|_| CliError::input(format!("bad range endpoint '{}'", parts[0])))?;
        let hi: f64 = parts[1]
            .parse()
            .map_err(|_| CliError::input(format!("bad range endpoint '{}'", parts[1])))?;
        let steps: usize = parts[2]
            .parse()
            .map_err(|_| CliError::input(format!("bad step count '{}'", parts[2])))?;
        if steps == 0 || hi < lo || (steps > 1 && hi <= lo) {
            return Err(CliError::input(format!("degenerate range '{spec}'")));
        }
        Ok(Range { lo, hi, steps })
    }

    fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.lo + step * i as f64).collect()
    }

    fn step(&self) -> f64 {
        if self.steps <= 1 {
            0.0
        } else {
            (self.hi - self.lo) / (self.steps - 1) as f64
        }
    }
}

fn cmd_scan(
    cli: &Cli,
    q0_spec: &str,
    q1_spec: &str,
    out_path: Option<&std::path::Path>,
    continuity: bool,
) -> Result<(), CliError> {
    let r0 = Range::parse(q0_spec)?;
    let r1 = Range::parse(q1_spec)?;
    let q0s = r0.values();
    let q1s = r1.values();
    let pairs: Vec<(f64, f64)> = q0s
        .iter()
        .flat_map(|&a| q1s.iter().map(move |&b| (a, b)))
        .collect();
    let worker = |&(q0, q1): &(f64, f64)| -> Result<ScanRow, CliError> {
        let q = base_pair(q0, q1)?;
        let result = univoque_dimension(&q)?;
        let ent = univoque_entropy(&q, cli.expansion_depth, cli.tol)?;
        Ok(ScanRow {
            q0,
            q1,
            dim: result.value,
            entropy: ent,
            case_tag: result.case_tag,
            exact: result.diagnostics.exact,
        })
    };
    let computed: Result<Vec<ScanRow>, CliError> = match cli.threads {
        Some(k) => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::input(format!("bad thread count: {e}")))?;
            pool.install(|| pairs.par_iter().map(worker).collect())
        }
        None => {
            use rayon::prelude::*;
            pairs.par_iter().map(worker).collect()
        }
    };
    let mut rows = computed?;
    rows.sort_by(|x, y| {
        x.q0.total_cmp(&y.q0)
            .then_with(|| x.q1.total_cmp(&y.q1))
    });

    let stats = if continuity {
        Some(continuity_stats(&rows, &r0, &r1))
    } else {
        None
    };

    let mut text = String::new();
    if cli.json {
        let out = ScanOutput {
            rows,
            continuity: stats,
        };
        text = serde_json::to_string_pretty(&out).expect("serialize");
        text.push('\n');
    } else {
        text.push_str("q0,q1,dim,entropy,case_tag,exact\n");
        for row in &rows {
            let _ = writeln!(text, "{}", csv_row(row));
        }
        if let Some(s) = &stats {
            let _ = writeln!(
                text,
                "# continuity: max_jump={} max_jump_q0={} max_jump_q1={} step_q0={} step_q1={}",
                csv_float(s.max_jump),
                csv_float(s.max_jump_q0),
                csv_float(s.max_jump_q1),
                csv_float(s.step_q0),
                csv_float(s.step_q1)
            );
        }
    }
    match out_path {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn continuity_stats(rows: &[ScanRow], r0: &Range, r1: &Range) -> ContinuityStats {
    // Rows are sorted by (q0, q1): index (i, j) lives at i·steps1 + j.
    let (n0, n1) = (r0.steps, r1.steps);
    let dim = |i: usize, j: usize| rows[i * n1 + j].dim;
    let mut max_q0 = 0.0f64;
    let mut max_q1 = 0.0f64;
    for i in 0..n0 {
        for j in 0..n1 {
            if i + 1 < n0 {
                max_q0 = max_q0.max((dim(i + 1, j) - dim(i, j)).abs());
            }
            if j + 1 < n1 {
                max_q1 = max_q1.max((dim(i, j + 1) - dim(i, j)).abs());
            }
        }
    }
    ContinuityStats {
        max_jump_q0: max_q0,
        max_jump_q1: max_q1,
        max_jump: max_q0.max(max_q1),
        step_q0: r0.step(),
        step_q1: r1.step(),
    }
}

#[derive(Debug, Serialize)]
struct OracleOutput {
    q0: f64,
    q1: f64,
    hole: (String, String),
    #[serde(flatten)]
    report: OracleReport,
}

fn cmd_oracle(cli: &Cli, q0: f64, q1: f64, hole_spec: &[String]) -> Result<(), CliError> {
    let q = base_pair(q0, q1)?;
    let h = parse_hole(hole_spec)?;
    let rep = report(&h, &q, cli.depth)?;
    let out = OracleOutput {
        q0,
        q1,
        hole: (h.a().to_string(), h.b().to_string()),
        report: rep,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else {
        println!("hole             ({}, {})", out.hole.0, out.hole.1);
        println!("base pair        ({q0}, {q1})");
        println!("depth            {}", out.report.depth);
        println!("language count   {}", out.report.language_count);
        println!("entropy upper    {:.12e}", out.report.entropy_upper);
        println!("moran estimate   {:.12e}", out.report.dim_estimate);
        println!(
            "series residuals {:.3e} {:.3e}  (tail bound {:.3e})",
            out.report.series.residual_laq,
            out.report.series.residual_qk,
            out.report.series.tail_bound
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Fixtures: the worked examples, replayed as pass/fail checks.
// ---------------------------------------------------------------------------

type FixtureResult = Result<(), String>;

fn cmd_fixtures(cli: &Cli) -> Result<i32, CliError> {
    let checks: Vec<(&str, fn() -> FixtureResult)> = vec![
        ("ex1 sporadic non-periodic pair", fixture_ex1),
        ("ex2 substitution family ((011)^{k-1}01, (10)^k 1)", fixture_ex2),
        ("ex3 fixed point of 0->010, 1->10", fixture_ex3),
        ("ex4 constant dimension near ((01110), (10011))", fixture_ex4),
        ("ex5 one-sided families at ((011), (10))", fixture_ex5),
        ("ex6 eventually periodic pair 011(10), 10011(10)", fixture_ex6),
    ];
    let mut failures = 0usize;
    for (name, check) in checks {
        match check() {
            Ok(()) => println!("ok   {name}"),
            Err(diff) => {
                failures += 1;
                println!("FAIL {name}: {diff}");
            }
        }
    }
    if cli.json {
        println!("{{\"failures\": {failures}}}");
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn seq(s: &str) -> EventuallyPeriodicSequence {
    s.parse().expect("fixture literal")
}

fn word(s: &str) -> Word {
    s.parse().expect("fixture literal")
}

fn admissible(a: &EventuallyPeriodicSequence, b: &EventuallyPeriodicSequence) -> FixtureResult {
    let h = Hole::new(a.clone(), b.clone())
        .map_err(|e| format!("({a}, {b}) rejected: {e}"))?;
    if is_admissible(&h) {
        Ok(())
    } else {
        Err(format!("({a}, {b}) is not admissible"))
    }
}

/// Word-level admissibility to a finite depth for pairs whose endpoints are
/// given only as digit streams (not eventually periodic): every suffix of
/// either endpoint, compared digit-by-digit out to `depth`, must not be
/// decided strictly above `a` and strictly below `b`.
fn stream_admissible(a: &dyn Fn(usize) -> u8, b: &dyn Fn(usize) -> u8, depth: usize) -> bool {
    let decided = |s: &dyn Fn(usize) -> u8, t: &dyn Fn(usize) -> u8, above: bool| -> bool {
        for p in 0..depth {
            let (x, y) = (s(p), t(p));
            if x != y {
                return if above { x > y } else { x < y };
            }
        }
        false
    };
    for start_a in [true, false] {
        for i in 0..depth {
            let s: Box<dyn Fn(usize) -> u8> = if start_a {
                Box::new(move |p| a(i + p))
            } else {
                Box::new(move |p| b(i + p))
            };
            if decided(&*s, a, true) && decided(&*s, b, false) {
                return false;
            }
        }
    }
    true
}

fn fixture_ex1() -> FixtureResult {
    // a = 01101(10)^2 1(10)^3 1 ...; b = (10)^inf.
    let mut a_digits: Vec<u8> = vec![0, 1, 1, 0, 1];
    let mut k = 2usize;
    while a_digits.len() < 200 {
        for _ in 0..k {
            a_digits.extend_from_slice(&[1, 0]);
        }
        a_digits.push(1);
        k += 1;
    }
    let a = move |i: usize| a_digits[i];
    let b = |i: usize| if i % 2 == 0 { 1 } else { 0 };
    if !stream_admissible(&a, &b, 60) {
        return Err("(a, b) fails word-level admissibility to depth 60".into());
    }
    // phi_k(0) = prefix of a of length (k-1)^2 + 1, phi_k(1) = (10)^{k-1} 1;
    // the images of ((01)^inf, (10)^inf) must be admissible and increase to a.
    let mut prev_image: Option<EventuallyPeriodicSequence> = None;
    for k in 2..=4usize {
        let m = (k - 1) * (k - 1) + 1;
        let image0 = Word::from_digits(&(0..m).map(|i| a(i)).collect::<Vec<u8>>());
        let image1 = word("10").repeat(k - 1).concat(&word("1"));
        let phi = Substitution::new(image0, image1).map_err(|e| e.to_string())?;
        let left = apply_substitution(&phi, &seq("(01)"));
        let right = apply_substitution(&phi, &seq("(10)"));
        admissible(&left, &right)?;
        if let Some(prev) = &prev_image {
            if prev.compare(&left) != std::cmp::Ordering::Less {
                return Err(format!("phi_{k}((01)^inf) did not increase: {prev} !< {left}"));
            }
        }
        // left must stay below a (first digit disagreement decides it).
        let decided_below = (0..200).find(|&i| left.digit(i) != a(i));
        match decided_below {
            Some(i) if left.digit(i) < a(i) => {}
            _ => return Err(format!("phi_{k}((01)^inf) = {left} is not below a")),
        }
        prev_image = Some(left);
    }
    Ok(())
}

fn fixture_ex2() -> FixtureResult {
    admissible(&seq("(011)"), &seq("(10)"))?;
    for k in 2..=4usize {
        // phi_k(0) = 01(101)^{k-2}, phi_k(1) = 101.
        let image0 = word("01").concat(&word("101").repeat(k - 2));
        let phi = Substitution::new(image0, word("101")).map_err(|e| e.to_string())?;
        let left = apply_substitution(&phi, &seq("(01)"));
        let expected_left =
            EventuallyPeriodicSequence::periodic(&word("011").repeat(k - 1).concat(&word("01")))
                .map_err(|e| e.to_string())?;
        if left != expected_left {
            return Err(format!("phi_{k}((01)^inf) = {left}, expected {expected_left}"));
        }
        // phi'_k(0) = (01)^k, phi'_k(1) = 1.
        let psi = Substitution::new(word("01").repeat(k), word("1")).map_err(|e| e.to_string())?;
        let right = apply_substitution(&psi, &seq("(10)"));
        let expected_right =
            EventuallyPeriodicSequence::periodic(&word("10").repeat(k).concat(&word("1")))
                .map_err(|e| e.to_string())?;
        if right != expected_right {
            return Err(format!("phi'_{k}((10)^inf) = {right}, expected {expected_right}"));
        }
        admissible(&left, &right)?;
    }
    Ok(())
}

fn fixture_ex3() -> FixtureResult {
    // psi: 0 -> 010, 1 -> 10; a, b are the fixed points from 0 and 1.
    let psi = Substitution::new(word("010"), word("10")).map_err(|e| e.to_string())?;
    let iterate = |start: &str| -> Vec<u8> {
        let mut w: Word = start.parse().expect("digit");
        while w.len() < 200 {
            w = psi.apply_word(&w);
        }
        w.digits().to_vec()
    };
    let a_digits = iterate("0");
    let b_digits = iterate("1");
    // Fixed-point property: psi of a prefix extends the prefix.
    for (name, digits) in [("a", &a_digits), ("b", &b_digits)] {
        let prefix = Word::from_digits(&digits[..40]);
        let image = psi.apply_word(&prefix);
        if image.digits()[..40] != digits[..40] {
            return Err(format!("psi(prefix) does not extend the {name} fixed point"));
        }
    }
    let a = move |i: usize| a_digits[i];
    let b = move |i: usize| b_digits[i];
    if !stream_admissible(&a, &b, 60) {
        return Err("(a, b) fails word-level admissibility to depth 60".into());
    }
    Ok(())
}

fn fixture_ex4() -> FixtureResult {
    admissible(&seq("(01110)"), &seq("(10011)"))?;
    // The pair is the image of ((01)^inf, (10)^inf) under 0 -> 011, 1 -> 10.
    let phi = Substitution::new(word("011"), word("10")).map_err(|e| e.to_string())?;
    if apply_substitution(&phi, &seq("(01)")) != seq("(01110)") {
        return Err("phi((01)^inf) != (01110)^inf".into());
    }
    if apply_substitution(&phi, &seq("(10)")) != seq("(10011)") {
        return Err("phi((10)^inf) != (10011)^inf".into());
    }
    // d is constant here: it matches the value at (phi(0^inf), phi(1^inf)).
    let q = BasePair::new(2.0, 2.0).expect("valid");
    let d_pair = crate::kneading::dim_pair(&seq("(01110)"), &seq("(10011)"), &q)
        .map_err(|e| e.to_string())?;
    let d_images =
        crate::kneading::dim_pair(&seq("(011)"), &seq("(10)"), &q).map_err(|e| e.to_string())?;
    if (d_pair - d_images).abs() > 1e-9 {
        return Err(format!(
            "dimension mismatch: {d_pair} vs {d_images} (diff {:.3e})",
            (d_pair - d_images).abs()
        ));
    }
    Ok(())
}

fn fixture_ex5() -> FixtureResult {
    admissible(&seq("(011)"), &seq("10(011)"))?;
    for k in 0..=3usize {
        let pre = word("011").repeat(k);
        let left = EventuallyPeriodicSequence::new(pre, word("01")).map_err(|e| e.to_string())?;
        admissible(&left, &seq("(10)"))?;
    }
    Ok(())
}

fn fixture_ex6() -> FixtureResult {
    admissible(&seq("011(10)"), &seq("10011(10)"))?;
    // a = phi'_k(01^inf) for phi'_k(0) = 011(10)^{k-2}, phi'_k(1) = 10.
    for k in 2..=3usize {
        let image0 = word("011").concat(&word("10").repeat(k - 2));
        let phi = Substitution::new(image0, word("10")).map_err(|e| e.to_string())?;
        let image = apply_substitution(&phi, &seq("0(1)"));
        if image != seq("011(10)") {
            return Err(format!("phi'_{k}(01^inf) = {image}, expected 011(10)^inf"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parse_and_values() {
        let r = Range::parse("1.5:2.5:3").unwrap();
        assert_eq!(r.values(), vec![1.5, 2.0, 2.5]);
        assert_eq!(Range::parse("2:2:1").unwrap().values(), vec![2.0]);
        assert!(Range::parse("2:1:5").is_err());
        assert!(Range::parse("1:2:0").is_err());
        assert!(Range::parse("1:2").is_err());
        assert!(Range::parse("x:2:3").is_err());
    }

    #[test]
    fn csv_floats_have_twelve_significant_digits() {
        assert_eq!(csv_float(0.5), "5.00000000000e-1");
        assert_eq!(csv_float(2.0), "2.00000000000e0");
    }

    #[test]
    fn fixtures_all_pass() {
        for (name, check) in [
            ("ex1", fixture_ex1 as fn() -> FixtureResult),
            ("ex2", fixture_ex2),
            ("ex3", fixture_ex3),
            ("ex4", fixture_ex4),
            ("ex5", fixture_ex5),
            ("ex6", fixture_ex6),
        ] {
            if let Err(diff) = check() {
                panic!("{name} failed: {diff}");
            }
        }
    }

    #[test]
    fn continuity_stats_on_known_grid() {
        let r0 = Range {
            lo: 0.0,
            hi: 1.0,
            steps: 2,
        };
        let r1 = Range {
            lo: 0.0,
            hi: 1.0,
            steps: 2,
        };
        let mk = |q0: f64, q1: f64, dim: f64| ScanRow {
            q0,
            q1,
            dim,
            entropy: 0.0,
            case_tag: CaseTag::KneadingRoot,
            exact: true,
        };
        let rows = vec![
            mk(0.0, 0.0, 0.0),
            mk(0.0, 1.0, 0.25),
            mk(1.0, 0.0, 0.5),
            mk(1.0, 1.0, 0.3),
        ];
        let s = continuity_stats(&rows, &r0, &r1);
        assert!((s.max_jump_q0 - 0.5).abs() < 1e-15);
        assert!((s.max_jump_q1 - 0.25).abs() < 1e-15);
        assert!((s.max_jump - 0.5).abs() < 1e-15);
    }

    #[test]
    fn bad_inputs_exit_2() {
        assert_eq!(run(["univoque", "dim", "0.5", "2.0"]), 2);
        assert_eq!(run(["univoque", "dim", "2.0", "2.0", "--hole", "(011)"]), 2);
        assert_eq!(
            run(["univoque", "dim", "2.0", "2.0", "--hole", "(10)", "(011)"]),
            2
        );
        assert_eq!(run(["univoque", "scan", "--q0", "2:1:5", "--q1", "2:2:1"]), 2);
    }

    #[test]
    fn good_inputs_exit_0() {
        assert_eq!(run(["univoque", "dim", "2.0", "2.0"]), 0);
        assert_eq!(run(["univoque", "fixtures"]), 0);
    }
}
