//! Command-line front end.
//!
//! Exit codes: 0 on success or passing verification, 1 on failed
//! verification, 2 on usage, validation or I/O errors.

mod report;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::family::{
    AdjacentShiftFamily, Family, PowerMaxFamily, QuantileModel, ShiftPair, TwoSpacingFamily,
};
use crate::montecarlo::{ks_two_sample, simulate_sides, RandomStream, RelationKind, RelationSpec, DEFAULT_ALPHA};
use crate::orderstats::{sample_order_stat, RankSpec};
use crate::verifier::{
    convolution_check, ode_residual, remark_suite, sweep_cases, typo_probe, RemarkCase,
    DEFAULT_CONVOLUTION_TOLERANCE, DEFAULT_EPSILON, DEFAULT_GRID_SIZE, DEFAULT_ODE_TOLERANCE,
    DEFAULT_QUAD_TOLERANCE,
};

pub use report::{format_decimal, write_report, write_reports, write_samples_csv, Detail, OutputFormat, RunReport};

/// Minimum residual the printed-constant variant must reach in the typo probe.
pub const TYPO_PROBE_FLOOR: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(name = "osshift", version, about = "Distributions characterized by exponentially shifted order statistics")]
struct Cli {
    /// Record wall-clock time in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the quantile function.
    Quantile {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "u", required = true, num_args = 1.., allow_negative_numbers = true)]
        u: Vec<f64>,
    },
    /// Evaluate the distribution function.
    Cdf {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "t", required = true, num_args = 1.., allow_negative_numbers = true)]
        t: Vec<f64>,
    },
    /// Evaluate the density.
    Pdf {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "t", required = true, num_args = 1.., allow_negative_numbers = true)]
        t: Vec<f64>,
    },
    /// Draw samples of an order statistic (default: the variable itself) as CSV.
    Sample {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// Rank i of the order statistic X_{i,m}.
        #[arg(long, default_value_t = 1)]
        rank: u32,
        /// Sample size m of the order statistic X_{i,m}.
        #[arg(long, default_value_t = 1)]
        size: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verification suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Residual of the first-order condition on a probability grid.
    Ode {
        #[command(flatten)]
        family: OptionalFamily,
        #[command(flatten)]
        relation: RelationOverride,
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_ODE_TOLERANCE)]
        tolerance: f64,
        /// Run the full parameter sweep instead of a single family.
        #[arg(long)]
        sweep: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Both sides of the convolution identity by quadrature.
    Conv {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        relation: RelationOverride,
        /// Evaluation points; defaults to the 10/30/50/70/90% quantiles.
        #[arg(long = "x", num_args = 1.., allow_negative_numbers = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_QUAD_TOLERANCE)]
        quad_tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_CONVOLUTION_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo equality in law via a two-sample KS test.
    Ks {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        relation: RelationOverride,
        #[arg(long)]
        seed: u64,
        /// Draws per side.
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        /// Significance level of the KS test.
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        significance: f64,
        /// Worker threads; never changes the output.
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the two candidate constants of the two-spacing W term.
    TypoProbe {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numerical CDF against the closed-form special cases.
    Remarks {
        /// Run a single case.
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// Adjacent order statistics, X_{k,n} vs X_{k+1,n}
    T1,
    /// Two spacings apart, X_{k,n} vs X_{k+2,n}
    T2,
    /// F^α scheme, Y₁ vs max{Y₁, Y₂}
    T3,
    /// X vs X_{n,n}
    Corollary,
}

impl FamilyKind {
    fn name(self) -> &'static str {
        match self {
            FamilyKind::T1 => "t1",
            FamilyKind::T2 => "t2",
            FamilyKind::T3 => "t3",
            FamilyKind::Corollary => "corollary",
        }
    }
}

#[derive(Debug, Args, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[command(flatten)]
    params: FamilyParams,
}

#[derive(Debug, Args, Clone)]
struct OptionalFamily {
    #[arg(long, value_enum, required_unless_present = "sweep")]
    family: Option<FamilyKind>,
    #[command(flatten)]
    params: FamilyParams,
}

#[derive(Debug, Args, Clone)]
struct FamilyParams {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    logc: f64,
}

/// Shift multipliers of the tested relation when they should differ from
/// the family's own (negative controls).
#[derive(Debug, Args, Clone)]
struct RelationOverride {
    #[arg(long)]
    rel_a: Option<f64>,
    #[arg(long)]
    rel_b: Option<f64>,
}

#[derive(Debug, Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A validated family together with the relation that characterizes it.
struct Setup {
    kind: FamilyKind,
    family: Family,
    relation: RelationSpec,
}

impl Setup {
    fn params(&self) -> Map<String, Value> {
        let s = self.relation.shifts();
        let fs = self.family.shifts();
        let mut m = Map::new();
        m.insert("a".into(), json!(fs.a()));
        m.insert("b".into(), json!(fs.b()));
        m.insert("logc".into(), json!(self.family.logc()));
        m.insert("c".into(), json!(self.family.logc().exp()));
        if s != fs {
            m.insert("rel_a".into(), json!(s.a()));
            m.insert("rel_b".into(), json!(s.b()));
        }
        match self.relation.kind() {
            RelationKind::Adjacent { n, k } | RelationKind::TwoSpacing { n, k } => {
                m.insert("n".into(), json!(n));
                m.insert("k".into(), json!(k));
            }
            RelationKind::PowerMax { alpha, beta } => {
                m.insert("alpha".into(), json!(alpha));
                m.insert("beta".into(), json!(beta));
            }
            RelationKind::CorollaryMax { n } => {
                m.insert("n".into(), json!(n));
            }
        }
        m
    }
}

fn required<T>(v: Option<T>, flag: &str, kind: FamilyKind) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for --family {}", kind.name())))
}

fn build_setup(kind: FamilyKind, p: &FamilyParams, rel: Option<&RelationOverride>) -> Result<Setup> {
    let shifts = ShiftPair::new(required(p.a, "a", kind)?, required(p.b, "b", kind)?)?;
    let (family, rel_kind): (Family, RelationKind) = match kind {
        FamilyKind::T1 => {
            let (n, k) = (required(p.n, "n", kind)?, required(p.k, "k", kind)?);
            (AdjacentShiftFamily::new(n, k, shifts, p.logc)?.into(), RelationKind::Adjacent { n, k })
        }
        FamilyKind::T2 => {
            let (n, k) = (required(p.n, "n", kind)?, required(p.k, "k", kind)?);
            (TwoSpacingFamily::new(n, k, shifts, p.logc)?.into(), RelationKind::TwoSpacing { n, k })
        }
        FamilyKind::T3 => {
            let (alpha, beta) = (required(p.alpha, "alpha", kind)?, required(p.beta, "beta", kind)?);
            (
                PowerMaxFamily::new(alpha, beta, shifts, p.logc)?.into(),
                RelationKind::PowerMax { alpha, beta },
            )
        }
        FamilyKind::Corollary => {
            let n = required(p.n, "n", kind)?;
            if n < 2 {
                return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
            }
            (PowerMaxFamily::corollary(n, shifts, p.logc)?.into(), RelationKind::CorollaryMax { n })
        }
    };
    let rel_shifts = match rel {
        Some(o) if o.rel_a.is_some() || o.rel_b.is_some() => {
            ShiftPair::new(o.rel_a.unwrap_or(shifts.a()), o.rel_b.unwrap_or(shifts.b()))?
        }
        _ => shifts,
    };
    let relation = RelationSpec::new(rel_kind, rel_shifts)?;
    Ok(Setup {
        kind,
        family,
        relation,
    })
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("I/O error: {e}"))
    }
}

/// Parses `argv` (including the program name), runs the command, and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams instead of stdout/stderr.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn finish(reports: &[RunReport], output: &OutputArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    report::with_sink(output.out.as_deref(), out, |w| write_reports(reports, output.format, w))?;
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn elapsed(timing: bool, start: Instant) -> Option<f64> {
    timing.then(|| start.elapsed().as_secs_f64() * 1e3)
}

fn execute(cli: Cli, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let timing = cli.timing;
    let start = Instant::now();
    match cli.command {
        Command::Quantile { family, u } => {
            let setup = build_setup(family.family, &family.params, None)?;
            let values = u
                .iter()
                .map(|&u| setup.family.quantile(u))
                .collect::<Result<Vec<_>>>()?;
            for v in values {
                writeln!(out, "{v:?}")?;
            }
            Ok(())
        }
        Command::Cdf { family, t } => {
            let setup = build_setup(family.family, &family.params, None)?;
            for t in t {
                writeln!(out, "{:?}", setup.family.cdf(t))?;
            }
            Ok(())
        }
        Command::Pdf { family, t } => {
            let setup = build_setup(family.family, &family.params, None)?;
            for t in t {
                writeln!(out, "{:?}", setup.family.pdf(t))?;
            }
            Ok(())
        }
        Command::Sample {
            family,
            count,
            seed,
            rank,
            size,
            out: path,
        } => {
            let setup = build_setup(family.family, &family.params, None)?;
            let rank = RankSpec::new(rank, size)?;
            let draws = sample_order_stat(&setup.family, rank, count, &mut RandomStream::new(seed, 0))?;
            report::with_sink(path.as_deref(), out, |w| write_samples_csv(&draws, w))?;
            Ok(())
        }
        Command::Verify(v) => verify(v, timing, start, out),
    }
}

fn verify(cmd: VerifyCommand, timing: bool, start: Instant, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match cmd {
        VerifyCommand::Ode {
            family,
            relation,
            grid,
            epsilon,
            tolerance,
            sweep,
            output,
        } => {
            let cases: Vec<(String, Family, RelationSpec, Map<String, Value>)> = if sweep {
                sweep_cases()
                    .into_iter()
                    .map(|(f, rel)| {
                        let kind = match rel.kind() {
                            RelationKind::Adjacent { .. } => FamilyKind::T1,
                            RelationKind::TwoSpacing { .. } => FamilyKind::T2,
                            RelationKind::PowerMax { .. } => FamilyKind::T3,
                            RelationKind::CorollaryMax { .. } => FamilyKind::Corollary,
                        };
                        let setup = Setup {
                            kind,
                            family: f,
                            relation: rel,
                        };
                        let params = setup.params();
                        (kind.name().to_string(), setup.family, setup.relation, params)
                    })
                    .collect()
            } else {
                let kind = family.family.expect("clap enforces --family without --sweep");
                let setup = build_setup(kind, &family.params, Some(&relation))?;
                let params = setup.params();
                vec![(setup.kind.name().to_string(), setup.family, setup.relation, params)]
            };
            let mut reports = Vec::with_capacity(cases.len());
            for (name, fam, rel, params) in cases {
                let t0 = Instant::now();
                let r = ode_residual(&rel, &fam, grid, epsilon)?.with_tolerance(tolerance);
                reports.push(RunReport {
                    command: "verify ode".into(),
                    family: name,
                    params,
                    statistic: r.max_abs_residual,
                    threshold: None,
                    tolerance: Some(r.tolerance),
                    pass: r.pass,
                    seed: None,
                    grid_or_sample_size: grid,
                    wall_time_ms: elapsed(timing, t0),
                    detail: Detail::Residual(r),
                });
            }
            finish(&reports, &output, out)
        }
        VerifyCommand::Conv {
            family,
            relation,
            x,
            quad_tolerance,
            tolerance,
            output,
        } => {
            let setup = build_setup(family.family, &family.params, Some(&relation))?;
            let xs = if x.is_empty() {
                [0.1, 0.3, 0.5, 0.7, 0.9]
                    .iter()
                    .map(|&u| setup.family.quantile_unchecked(u))
                    .collect()
            } else {
                x
            };
            let r = convolution_check(&setup.relation, &setup.family, &xs, quad_tolerance)?.with_tolerance(tolerance);
            let report = RunReport {
                command: "verify conv".into(),
                family: setup.kind.name().into(),
                params: setup.params(),
                statistic: r.max_abs_residual,
                threshold: None,
                tolerance: Some(r.tolerance),
                pass: r.pass,
                seed: None,
                grid_or_sample_size: xs.len(),
                wall_time_ms: elapsed(timing, start),
                detail: Detail::Residual(r),
            };
            finish(&[report], &output, out)
        }
        VerifyCommand::Ks {
            family,
            relation,
            seed,
            count,
            significance,
            workers,
            output,
        } => {
            let setup = build_setup(family.family, &family.params, Some(&relation))?;
            if count == 0 {
                return Err(Failure::Usage("--count must be positive".into()));
            }
            let simulate = || simulate_sides(&setup.relation, &setup.family, count, &mut RandomStream::new(seed, 0));
            let (left, right) = match workers {
                Some(w) => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(w.max(1))
                        .build()
                        .map_err(|e| Failure::Usage(format!("worker pool: {e}")))?;
                    pool.install(simulate)?
                }
                None => simulate()?,
            };
            let r = ks_two_sample(&left, &right, significance)?.with_seed(seed);
            let report = RunReport {
                command: "verify ks".into(),
                family: setup.kind.name().into(),
                params: setup.params(),
                statistic: r.statistic,
                threshold: Some(r.threshold),
                tolerance: None,
                pass: r.pass,
                seed: Some(seed),
                grid_or_sample_size: count,
                wall_time_ms: elapsed(timing, start),
                detail: Detail::Ks(r),
            };
            finish(&[report], &output, out)
        }
        VerifyCommand::TypoProbe { n, k, a, b, grid, output } => {
            let shifts = ShiftPair::new(a, b)?;
            let (minus, plus) = typo_probe(n, k, shifts, grid)?;
            let mut params = Map::new();
            params.insert("n".into(), json!(n));
            params.insert("k".into(), json!(k));
            params.insert("a".into(), json!(a));
            params.insert("b".into(), json!(b));
            let report = RunReport {
                command: "verify typo-probe".into(),
                family: "t2".into(),
                params,
                statistic: minus.max_abs_residual,
                threshold: Some(TYPO_PROBE_FLOOR),
                tolerance: Some(minus.tolerance),
                pass: minus.pass && plus.max_abs_residual >= TYPO_PROBE_FLOOR,
                seed: None,
                grid_or_sample_size: grid,
                wall_time_ms: elapsed(timing, start),
                detail: Detail::TypoProbe {
                    proof_consistent: minus,
                    printed: plus,
                },
            };
            finish(&[report], &output, out)
        }
        VerifyCommand::Remarks { id, output } => {
            let cases = match id {
                Some(id) => vec![RemarkCase::lookup(&id)?],
                None => remark_suite(),
            };
            let reports: Vec<RunReport> = cases
                .iter()
                .map(|c| {
                    let t0 = Instant::now();
                    let r = c.check();
                    let mut params = Map::new();
                    params.insert("remark".into(), serde_json::to_value(c.remark).unwrap_or(Value::Null));
                    params.insert("model".into(), serde_json::to_value(&c.family).unwrap_or(Value::Null));
                    RunReport {
                        command: "verify remarks".into(),
                        family: c.id.into(),
                        params,
                        statistic: r.max_abs_residual,
                        threshold: None,
                        tolerance: Some(r.tolerance),
                        pass: r.pass,
                        seed: None,
                        grid_or_sample_size: r.grid_size,
                        wall_time_ms: elapsed(timing, t0),
                        detail: Detail::Residual(r),
                    }
                })
                .collect();
            finish(&reports, &output, out)
        }
    }
}
