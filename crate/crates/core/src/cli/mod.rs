//! The `qcert` command line.
//!
//! Exit codes: 0 success (certify: certified), 1 failure, 2 refuted,
//! 3 inconclusive, 64 malformed input. Reports are JSON on standard output
//! unless `--report` names a file; floats carry 17 significant digits.

pub mod json;
pub mod verify;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use json::to_json;
pub use verify::{run_suites, table, SuiteResult};

use crate::armaps::{run_pipeline, ArmapSpec};
use crate::certify::interval::Interval;
use crate::certify::{certify_lower_bound, grid_scan, AbSemantics, CertifyConfig, EllipseDomain, QueueOrder, Verdict};
use crate::fiber::{fiber_of, three_point_witness, FiberResult};
use crate::pointio::{complex_pair, parse_point, PointJson};
use crate::quadric::{degeneracy_witness, eval_jacobian, random_mt_point, t_level, Chart, QUADRIC_TOL};
use crate::Complex64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "qcert", version, about = "Validated numerics for the Ahern-Rudin map on the quadric Q^3")]
pub struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "QC_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the randomised identity suites and print a pass/fail table.
    Verify(VerifyArgs),
    /// Certify a lower bound for AB on the ellipse with interval arithmetic.
    Certify(CertifyArgs),
    /// Evaluate min-over-branches AB on a grid over the ellipse.
    Scan(ScanArgs),
    /// Compute fibers of the extended map.
    Fibers(FibersArgs),
    /// Produce a point where the Jacobian vanishes on M_t^3.
    Degeneracy(DegeneracyArgs),
    /// Run the generalized-map pipeline on a polynomial spec file.
    Armap(ArmapArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Samples per suite.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = QUADRIC_TOL)]
    pub quadric_tol: f64,
    /// Write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Admissible,
    Unrestricted,
}

impl From<SemanticsArg> for AbSemantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Admissible => AbSemantics::Admissible,
            SemanticsArg::Unrestricted => AbSemantics::Unrestricted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QueueArg {
    Widest,
    Lex,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Margin by which the ellipse is shrunk.
    #[arg(long)]
    pub epsilon: f64,
    /// A number, or `tau2` for (2+√2)/3 rounded upward.
    #[arg(long, default_value = "tau2")]
    pub bound: String,
    #[arg(long, default_value_t = 60)]
    pub max_depth: u32,
    #[arg(long, default_value_t = 1e-12)]
    pub min_width: f64,
    #[arg(long, default_value_t = 200_000_000)]
    pub max_boxes: u64,
    #[arg(long, value_enum, default_value_t = SemanticsArg::Admissible)]
    pub semantics: SemanticsArg,
    #[arg(long, value_enum, default_value_t = QueueArg::Widest)]
    pub queue: QueueArg,
    /// Include wall-clock time in the report (makes it run-dependent).
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 2000)]
    pub nx: usize,
    #[arg(long, default_value_t = 1000)]
    pub ny: usize,
    #[arg(long, default_value_t = 0.0)]
    pub margin: f64,
    #[arg(long, value_enum, default_value_t = SemanticsArg::Admissible)]
    pub semantics: SemanticsArg,
    /// Write the full grid as CSV here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FibersArgs {
    /// Base point: JSON, 8-number CSV, or a tuple like "(1,(1+i)/2,1,0.5-0.5i)".
    #[arg(long)]
    pub point: Option<String>,
    /// Level. With --point it must match the point's level; with --samples it
    /// sets the level of random base points; alone it gives the three-point
    /// fiber over (u, u, 0).
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DegeneracyArgs {
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ArmapArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Settings shared by the verification run; echoed into its report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub quadric_tol: f64,
    pub seed: u64,
    pub samples: usize,
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub report: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: "verify".into(),
            quadric_tol: QUADRIC_TOL,
            seed: 0,
            samples: 10_000,
            threads: None,
            report: None,
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> i32 {
    eprintln!("qcert: {msg}");
    EXIT_USAGE
}

fn emit(report: Option<&Path>, body: &str) -> Result<(), i32> {
    match report {
        Some(p) => std::fs::write(p, body).map_err(|e| {
            eprintln!("qcert: cannot write {}: {e}", p.display());
            EXIT_FAIL
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a RunConfig,
    suites: &'a [SuiteResult],
    passed: bool,
}

pub fn cmd_verify(cfg: &RunConfig) -> i32 {
    if !(cfg.quadric_tol >= 0.0) {
        return usage(format!("--quadric-tol must be nonnegative, got {}", cfg.quadric_tol));
    }
    let rows = run_suites(cfg.seed, cfg.samples, cfg.quadric_tol);
    let passed = rows.iter().all(|r| r.passed);
    print!("{}", table(&rows));
    println!("{}", if passed { "all suites passed" } else { "SOME SUITES FAILED" });
    if let Some(p) = &cfg.report {
        let body = to_json(&VerifyReport {
            config: cfg,
            suites: &rows,
            passed,
        });
        if let Err(code) = emit(Some(p), &body) {
            return code;
        }
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

/// `(2+√2)/3` rounded upward, so that a certificate for it covers the exact
/// value.
pub fn tau_sq_upper() -> f64 {
    let two = Interval::point(2.0);
    ((two + two.sqrt()) / Interval::point(3.0)).hi
}

pub fn parse_bound(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("tau2") {
        return Ok(tau_sq_upper());
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("--bound: expected a number or `tau2`, got `{s}`")),
    }
}

pub fn cmd_certify(args: &CertifyArgs, threads: Option<usize>) -> i32 {
    let bound = match parse_bound(&args.bound) {
        Ok(b) => b,
        Err(e) => return usage(e),
    };
    if !(args.epsilon > 0.0) {
        return usage(format!("--epsilon must be positive, got {}", args.epsilon));
    }
    let cfg = CertifyConfig {
        max_depth: args.max_depth,
        min_box_width: args.min_width,
        queue_order: match args.queue {
            QueueArg::Widest => QueueOrder::WidestFirst,
            QueueArg::Lex => QueueOrder::Lexicographic,
        },
        semantics: args.semantics.into(),
        max_boxes: args.max_boxes,
        threads,
    };
    let report = match certify_lower_bound(&EllipseDomain::with_margin(args.epsilon), bound, &cfg) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    eprintln!(
        "qcert certify: {:?} after {} boxes in {:.3} s",
        report.verdict,
        report.boxes_processed,
        report.wall_time.unwrap_or(0.0)
    );
    let shown = if args.timing { report.clone() } else { report.canonical() };
    if let Err(code) = emit(args.report.as_deref(), &to_json(&shown)) {
        return code;
    }
    match report.verdict {
        Verdict::Certified => EXIT_OK,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

pub fn cmd_scan(args: &ScanArgs) -> i32 {
    if !(args.margin >= 0.0) {
        return usage(format!("--margin must be nonnegative, got {}", args.margin));
    }
    let dom = EllipseDomain::with_margin(args.margin);
    let scan = match grid_scan(&dom, args.nx, args.ny, args.semantics.into()) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    if let Some(p) = &args.out {
        if let Err(e) = std::fs::write(p, scan.to_csv()) {
            eprintln!("qcert: cannot write {}: {e}", p.display());
            return EXIT_FAIL;
        }
    }
    if let Err(code) = emit(args.report.as_deref(), &to_json(&scan)) {
        return code;
    }
    if scan.members == 0 {
        eprintln!("qcert scan: no grid point lies in the domain");
    }
    EXIT_OK
}

pub fn cmd_fibers(args: &FibersArgs) -> i32 {
    let fibers: Vec<FiberResult> = match (&args.point, args.t, args.samples) {
        (Some(s), t, None) => {
            let p = match parse_point(s) {
                Ok(p) => p,
                Err(e) => return usage(format!("--point: {e}")),
            };
            if let Some(t) = t {
                let lvl = t_level(&p);
                if (lvl - t).abs() > 1e-9 * t.abs().max(1.0) {
                    return usage(format!("--t: point lies on level {lvl}, not {t}"));
                }
            }
            vec![fiber_of(&p)]
        }
        (None, Some(t), Some(n)) => {
            if !(t > 1.0 && t.is_finite()) {
                return usage(format!("--t must exceed 1, got {t}"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..n).map(|_| fiber_of(&random_mt_point(&mut rng, t))).collect()
        }
        (None, Some(t), None) => match three_point_witness(t) {
            Ok(pts) => vec![fiber_of(&pts[0])],
            Err(e) => {
                eprintln!("qcert: {e}");
                return EXIT_FAIL;
            }
        },
        (Some(_), _, Some(_)) => return usage("--point and --samples are mutually exclusive"),
        (None, None, _) => return usage("fibers needs --point or --t"),
    };
    if let Err(code) = emit(args.report.as_deref(), &to_json(&fibers)) {
        return code;
    }
    EXIT_OK
}

#[derive(Serialize)]
struct DegeneracyReport {
    t: f64,
    witness: PointJson,
    t_level: f64,
    #[serde(with = "complex_pair")]
    jacobian: Complex64,
    chart: Chart,
}

pub fn cmd_degeneracy(args: &DegeneracyArgs) -> i32 {
    let p = match degeneracy_witness(args.t) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qcert: {e}");
            return EXIT_FAIL;
        }
    };
    let j = match eval_jacobian(&p) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("qcert: {e}");
            return EXIT_FAIL;
        }
    };
    let body = to_json(&DegeneracyReport {
        t: args.t,
        witness: p.into(),
        t_level: t_level(&p),
        jacobian: j.value,
        chart: j.chart,
    });
    match emit(args.report.as_deref(), &body) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

pub fn cmd_armap(args: &ArmapArgs) -> i32 {
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => return usage(format!("--spec {}: {e}", args.spec.display())),
    };
    let spec = match ArmapSpec::parse(&text) {
        Ok(s) => s,
        Err(e) => return usage(format!("--spec {}: {e}", args.spec.display())),
    };
    let parts = match spec.parts() {
        Ok(p) => p,
        Err(e) => return usage(format!("--spec {}: {e}", args.spec.display())),
    };
    let report = run_pipeline(&parts, spec.samples, spec.seed, spec.u);
    if let Some(e) = &report.error {
        eprintln!("qcert: {e}");
    }
    if let Err(code) = emit(args.report.as_deref(), &to_json(&report)) {
        return code;
    }
    if report.ok() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads == Some(0) {
        return usage("--threads must be at least 1");
    }
    if let Some(n) = cli.threads {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Verify(a) => cmd_verify(&RunConfig {
            command: "verify".into(),
            quadric_tol: a.quadric_tol,
            seed: a.seed,
            samples: a.samples,
            threads: cli.threads,
            report: a.report.clone(),
        }),
        Command::Certify(a) => cmd_certify(a, cli.threads),
        Command::Scan(a) => cmd_scan(a),
        Command::Fibers(a) => cmd_fibers(a),
        Command::Degeneracy(a) => cmd_degeneracy(a),
        Command::Armap(a) => cmd_armap(a),
    }
}
