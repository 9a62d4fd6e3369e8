//! The `modsupport` command line tool.
//!
//! Every subcommand validates its parameters before computing, writes one
//! document (CSV or JSON with `schema_version` "1") and maps failures to the
//! exit codes [`EXIT_VALIDATION`] and [`EXIT_CAP`].

mod csv;
mod duality;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

pub use duality::{duality_trials, ConvexTrial, DualityConfig, DualityReport, DualityTrial};

use crate::circlemeasure::{
    coefficient_table, fs_coeff_oracle_bound, oracle_stage_for_bound, parse_polynomial, pisot_check,
    rajchman_classify_with_tol, CoefficientMethod, RatioParam, DEFAULT_MAX_GENERATION,
};
use crate::fmt::{serialize_complex, write_json};
use crate::peaks::{build_peak_candidate, herglotz_weight_moments, vanish_at_origin, PeakCandidate, PeakParams};
use crate::support::{
    discretize_measure, moment_vector, pairing_crosscheck, verify_support_pair, CircleMeasure, Crosscheck, MeasureSpec,
    SearchConfig, SupportReport, VerifyConfig,
};
use crate::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";
pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "modsupport",
    version,
    about = "Cantor measures, peak-function candidates and modulus support checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for the parallel kernels.
    #[arg(long, global = true, env = "MODSUPPORT_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fourier-Stieltjes coefficients of a Cantor measure.
    Coeffs(CoeffsArgs),
    /// Rajchman classification of a ratio, or a Pisot check of a polynomial.
    Classify(ClassifyArgs),
    /// Build a peak-function candidate.
    Peak(PeakCmdArgs),
    /// Build a candidate and check it against the Cantor moments.
    Verify(VerifyArgs),
    /// Random trials of the duality between S0 and the sup norm.
    Duality(DualityArgs),
    /// Arc discretization of a circle measure.
    Discretize(DiscretizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Product,
    Oracle,
    Both,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub xi: String,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub min_n: i64,
    #[arg(long, default_value_t = 256, allow_negative_numbers = true)]
    pub max_n: i64,
    #[arg(long, value_enum, default_value_t = MethodArg::Product)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Oracle stage; by default the least stage meeting --target-bound.
    #[arg(long)]
    pub stage: Option<u32>,
    #[arg(long, default_value_t = 2e-3)]
    pub target_bound: f64,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Rational ratio p/q.
    #[arg(long, conflicts_with_all = ["poly", "tag"])]
    pub xi: Option<String>,
    /// Monic integer polynomial, highest degree first, for a Pisot check.
    #[arg(long, conflicts_with = "tag")]
    pub poly: Option<String>,
    /// Minimal polynomial of 1/xi for an irrational ratio.
    #[arg(long)]
    pub tag: Option<String>,
    /// Approximate xi, selecting the root of --tag.
    #[arg(long, requires = "tag")]
    pub approx: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone)]
pub struct PeakArgs {
    #[arg(long, default_value = "2/13")]
    pub xi: String,
    #[arg(long, default_value_t = 0.6)]
    pub alpha: f64,
    #[arg(long, default_value_t = 4096)]
    pub degree: usize,
    /// Generations of gaps carrying the weight.
    #[arg(long, default_value_t = 10)]
    pub gen: u32,
    #[arg(long, default_value_t = crate::peaks::DEFAULT_DAMPING)]
    pub damping: f64,
    /// Boundary grid for sup-norm brackets.
    #[arg(long, default_value_t = 1 << 22)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub sup_slack: f64,
    #[arg(long, default_value_t = 0.05)]
    pub deficiency_cap: f64,
    /// Post-compose with the Blaschke factor so that G(0) = 0.
    #[arg(long)]
    pub vanish_origin: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PeakEmit {
    Candidate,
    Moments,
}

#[derive(Args, Debug)]
pub struct PeakCmdArgs {
    #[command(flatten)]
    pub peak: PeakArgs,
    /// `moments` writes the Herglotz weight moments instead of the candidate.
    #[arg(long, value_enum, default_value_t = PeakEmit::Candidate)]
    pub emit: PeakEmit,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub peak: PeakArgs,
    #[arg(long, default_value_t = 0.2)]
    pub tau: f64,
    /// Stage for the series-versus-integral crosscheck; skipped when absent.
    #[arg(long)]
    pub crosscheck_stage: Option<u32>,
}

#[derive(Args, Debug)]
pub struct DualityArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 500)]
    pub convex_trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 64)]
    pub degree: usize,
    #[arg(long, default_value_t = 4096)]
    pub angles: usize,
    #[arg(long, default_value_t = 20)]
    pub max_k: u32,
}

#[derive(Args, Debug)]
pub struct DiscretizeArgs {
    /// Cantor ratio p/q; Lebesgue measure when absent.
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub stage: u32,
    #[arg(long, default_value_t = 64)]
    pub arcs: usize,
    /// Highest moment compared against the exact one.
    #[arg(long, default_value_t = 8)]
    pub moments: usize,
}

/// A failed run: the message for the error stream, the exit code, and an
/// optional document still to be written.
struct Failure {
    error: Error,
    document: Option<Document>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, document: None }
    }
}

enum Document {
    Json(serde_json::Value),
    Csv(Vec<u8>),
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: &'static str,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(command: &str, body: T) -> Result<Document> {
    let value = serde_json::to_value(Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        body,
    })
    .map_err(|e| Error::InvalidParameter(format!("serialization failed: {e}")))?;
    Ok(Document::Json(value))
}

fn csv_with(f: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) -> Result<Document> {
    let mut buf = Vec::new();
    f(&mut buf).map_err(|e| Error::InvalidParameter(format!("CSV rendering failed: {e}")))?;
    Ok(Document::Csv(buf))
}

fn emit(format: Format, command: &str, body: impl Serialize) -> Result<Document> {
    let doc = json(command, body)?;
    match (format, doc) {
        (Format::Csv, Document::Json(v)) => csv_with(|w| csv::write_key_value(w, &v)),
        (_, doc) => Ok(doc),
    }
}

fn parse_ratio(s: &str) -> Result<RatioParam> {
    RatioParam::from_str(s)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

fn cmd_coeffs(format: Format, args: &CoeffsArgs) -> Result<Document> {
    let ratio = parse_ratio(&args.xi)?;
    check(args.min_n <= args.max_n, || {
        format!("--min-n {} exceeds --max-n {}", args.min_n, args.max_n)
    })?;
    check(args.min_n.abs().max(args.max_n.abs()) <= 1 << 24, || {
        "indices limited to |n| <= 2^24".into()
    })?;
    check(args.tol > 0.0, || format!("--tol must be > 0, got {}", args.tol))?;
    check(args.target_bound > 0.0, || "--target-bound must be > 0".into())?;
    let n_abs = args.min_n.abs().max(args.max_n.abs());
    let stage = args
        .stage
        .unwrap_or_else(|| oracle_stage_for_bound(&ratio, n_abs, args.target_bound));
    if stage > DEFAULT_MAX_GENERATION {
        return Err(Error::GenerationTooLarge {
            requested: stage,
            max: DEFAULT_MAX_GENERATION,
        });
    }
    let range = args.min_n..=args.max_n;
    match args.method {
        MethodArg::Product | MethodArg::Oracle => {
            let method = if args.method == MethodArg::Product {
                CoefficientMethod::Product { tol: args.tol }
            } else {
                CoefficientMethod::Oracle { stage }
            };
            let table = coefficient_table(&ratio, range, method)?;
            match format {
                Format::Csv => csv_with(|w| table.write_csv(w)),
                Format::Json => json("coeffs", serde_json::json!({ "table": table })),
            }
        }
        MethodArg::Both => {
            let product = coefficient_table(&ratio, range.clone(), CoefficientMethod::Product { tol: args.tol })?;
            let oracle = coefficient_table(&ratio, range, CoefficientMethod::Oracle { stage })?;
            let rows: Vec<BothRow> = product
                .indices()
                .map(|n| {
                    let p = product.get(n).expect("in range");
                    let o = oracle.get(n).expect("in range");
                    let bound = product.tail_bound(n).expect("in range") + fs_coeff_oracle_bound(&ratio, stage, n);
                    BothRow {
                        n,
                        product: p,
                        oracle: o,
                        difference: (p - o).norm(),
                        bound,
                        agree: (p - o).norm() <= bound,
                    }
                })
                .collect();
            let disagreements = rows.iter().filter(|r| !r.agree).count();
            match format {
                Format::Csv => csv_with(|w| {
                    use crate::fmt::f17;
                    writeln!(w, "n,product_re,product_im,oracle_re,oracle_im,difference,bound,agree")?;
                    for r in &rows {
                        writeln!(
                            w,
                            "{},{},{},{},{},{},{},{}",
                            r.n,
                            f17(r.product.re),
                            f17(r.product.im),
                            f17(r.oracle.re),
                            f17(r.oracle.im),
                            f17(r.difference),
                            f17(r.bound),
                            r.agree
                        )?;
                    }
                    Ok(())
                }),
                Format::Json => json(
                    "coeffs",
                    BothDoc {
                        ratio: ratio.to_string(),
                        tol: args.tol,
                        stage,
                        disagreements,
                        rows,
                    },
                ),
            }
        }
    }
}

#[derive(Serialize)]
struct BothRow {
    n: i64,
    #[serde(serialize_with = "serialize_complex")]
    product: Complex64,
    #[serde(serialize_with = "serialize_complex")]
    oracle: Complex64,
    difference: f64,
    bound: f64,
    agree: bool,
}

#[derive(Serialize)]
struct BothDoc {
    ratio: String,
    tol: f64,
    stage: u32,
    disagreements: usize,
    rows: Vec<BothRow>,
}

fn cmd_classify(format: Format, args: &ClassifyArgs) -> Result<Document> {
    check(args.tol > 0.0 && args.tol < 1.0, || {
        format!("--tol must lie in (0, 1), got {}", args.tol)
    })?;
    match (&args.xi, &args.poly, &args.tag) {
        (Some(xi), None, None) => {
            let ratio = parse_ratio(xi)?;
            emit(format, "classify", rajchman_classify_with_tol(&ratio, args.tol))
        }
        (None, Some(poly), None) => {
            let coeffs = parse_polynomial(poly)?;
            let report = pisot_check(&coeffs, args.tol)?;
            emit(
                format,
                "classify",
                serde_json::json!({ "polynomial": coeffs, "pisot": report }),
            )
        }
        (None, None, Some(tag)) => {
            let ratio = RatioParam::algebraic(parse_polynomial(tag)?, args.approx)?;
            emit(format, "classify", rajchman_classify_with_tol(&ratio, args.tol))
        }
        _ => Err(Error::InvalidParameter(
            "give exactly one of --xi, --poly, --tag".into(),
        )),
    }
}

fn peak_params(args: &PeakArgs) -> Result<PeakParams> {
    let ratio = parse_ratio(&args.xi)?;
    let mut p = PeakParams::new(args.alpha, ratio, args.gen, args.degree);
    p.damping = args.damping;
    p.sup_grid = args.grid;
    p.sup_slack = args.sup_slack;
    p.deficiency_cap = args.deficiency_cap;
    p.validate()?;
    check(args.gen >= 1, || "--gen must be >= 1".into())?;
    check(args.grid <= 1 << 26, || "--grid limited to 2^26".into())?;
    Ok(p)
}

/// Builds the candidate, optionally vanishing at the origin. A cap violation
/// still returns the candidate, together with the error.
fn run_candidate(args: &PeakArgs) -> Result<(PeakCandidate, Option<Error>)> {
    let params = peak_params(args)?;
    let split = |r: Result<PeakCandidate>| -> Result<(PeakCandidate, Option<Error>)> {
        match r {
            Ok(c) => Ok((c, None)),
            Err(Error::CapExceeded { violations, candidate }) => {
                let c = (*candidate).clone();
                Ok((c, Some(Error::CapExceeded { violations, candidate })))
            }
            Err(e) => Err(e),
        }
    };
    let (base, err) = split(build_peak_candidate(&params))?;
    if err.is_some() || !args.vanish_origin {
        return Ok((base, err));
    }
    split(vanish_at_origin(&base))
}

#[derive(Serialize)]
struct PeakDoc<'a> {
    status: &'static str,
    candidate: &'a PeakCandidate,
}

fn status(err: &Option<Error>) -> &'static str {
    if err.is_some() {
        "aborted"
    } else {
        "ok"
    }
}

fn with_cap(doc: Document, err: Option<Error>) -> std::result::Result<Document, Failure> {
    match err {
        None => Ok(doc),
        Some(error) => Err(Failure {
            error,
            document: Some(doc),
        }),
    }
}

fn cmd_peak(format: Format, args: &PeakCmdArgs) -> std::result::Result<Document, Failure> {
    if args.emit == PeakEmit::Moments {
        let params = peak_params(&args.peak)?;
        let weight = herglotz_weight_moments(&params)?;
        return Ok(match format {
            Format::Csv => csv_with(|w| weight.write_csv(w))?,
            Format::Json => json("peak", serde_json::json!({ "params": params, "weight": weight }))?,
        });
    }
    let (candidate, err) = run_candidate(&args.peak)?;
    let doc = match format {
        Format::Csv => csv_with(|w| candidate.series.write_csv(w))?,
        Format::Json => json(
            "peak",
            PeakDoc {
                status: status(&err),
                candidate: &candidate,
            },
        )?,
    };
    with_cap(doc, err)
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    status: &'static str,
    report: Option<SupportReport>,
    #[serde(serialize_with = "serialize_complex")]
    constant_coefficient: Complex64,
    vanishes_at_origin: bool,
    candidate_diagnostics: &'a crate::peaks::PeakDiagnostics,
    params: &'a PeakParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    crosscheck: Option<Crosscheck>,
}

fn cmd_verify(format: Format, args: &VerifyArgs) -> std::result::Result<Document, Failure> {
    check(args.tau >= 0.0 && args.tau < 1.0, || {
        format!("--tau must lie in [0, 1), got {}", args.tau)
    })?;
    if let Some(m) = args.crosscheck_stage {
        check(m <= 16, || "--crosscheck-stage limited to 16".into())?;
    }
    let (candidate, err) = run_candidate(&args.peak)?;
    let params = &candidate.params;
    let (report, crosscheck) = if err.is_none() {
        let y = moment_vector(
            &MeasureSpec::Cantor {
                ratio: params.ratio.clone(),
                tol: 1e-12,
            },
            params.degree,
        )?;
        let report = verify_support_pair(
            &candidate.series,
            &y,
            VerifyConfig {
                grid: params.sup_grid,
                tau: args.tau,
            },
        )?;
        let crosscheck = match args.crosscheck_stage {
            Some(m) => Some(pairing_crosscheck(&candidate.series, &params.ratio, m, params.degree)?),
            None => None,
        };
        (Some(report), crosscheck)
    } else {
        (None, None)
    };
    let doc = VerifyDoc {
        status: status(&err),
        report,
        constant_coefficient: candidate.series.coefficient(0),
        vanishes_at_origin: candidate.vanishes_at_origin,
        candidate_diagnostics: &candidate.diagnostics,
        params,
        crosscheck,
    };
    with_cap(emit(format, "verify", doc)?, err)
}

fn cmd_duality(format: Format, args: &DualityArgs, stderr: &mut dyn Write) -> Result<Document> {
    check(args.degree >= 1 && args.degree <= 1 << 12, || {
        "--degree must lie in 1..=4096".into()
    })?;
    check(args.angles >= 8 && args.angles <= 1 << 20, || {
        "--angles must lie in 8..=2^20".into()
    })?;
    check(args.max_k <= 52, || "--max-k limited to 52".into())?;
    let config = DualityConfig {
        trials: args.trials,
        convex_trials: args.convex_trials,
        seed: args.seed,
        max_degree: args.degree,
        search: SearchConfig {
            angles: args.angles,
            max_k: args.max_k,
        },
        ..DualityConfig::default()
    };
    let report = duality_trials(&config)?;
    let _ = writeln!(stderr, "violations: {}", report.violations);
    match format {
        Format::Csv => csv_with(|w| {
            use crate::fmt::f17;
            writeln!(
                w,
                "trial,degree,nonzero,sup_lower,sup_upper,epsilon,best,within_bracket"
            )?;
            for t in &report.trials {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{}",
                    t.trial,
                    t.degree,
                    t.nonzero,
                    f17(t.sup_lower),
                    f17(t.sup_upper),
                    f17(t.epsilon),
                    f17(t.best),
                    t.within_bracket
                )?;
            }
            writeln!(w, "violations: {}", report.violations)
        }),
        Format::Json => json("duality", &report),
    }
}

#[derive(Serialize)]
struct MomentCheck {
    j: usize,
    #[serde(serialize_with = "serialize_complex")]
    discretized: Complex64,
    #[serde(serialize_with = "serialize_complex")]
    exact: Complex64,
    error: f64,
    bound: f64,
}

fn cmd_discretize(format: Format, args: &DiscretizeArgs) -> Result<Document> {
    check(args.arcs >= 2 && args.arcs <= 1 << 20, || {
        format!("--arcs must lie in 2..=2^20, got {}", args.arcs)
    })?;
    check(args.moments <= 1 << 12, || "--moments limited to 4096".into())?;
    let (measure, spec, label) = match &args.xi {
        Some(xi) => {
            let ratio = parse_ratio(xi)?;
            if args.stage > DEFAULT_MAX_GENERATION {
                return Err(Error::GenerationTooLarge {
                    requested: args.stage,
                    max: DEFAULT_MAX_GENERATION,
                });
            }
            (
                CircleMeasure::CantorStage {
                    ratio: ratio.clone(),
                    stage: args.stage,
                },
                MeasureSpec::CantorStage {
                    ratio: ratio.clone(),
                    stage: args.stage,
                },
                format!("cantor_stage({ratio}, {})", args.stage),
            )
        }
        None => (CircleMeasure::Lebesgue, MeasureSpec::Lebesgue, "lebesgue".to_string()),
    };
    let set = discretize_measure(&measure, args.arcs)?;
    match format {
        Format::Csv => csv_with(|w| {
            use crate::fmt::f17;
            writeln!(w, "k,re,im,weight")?;
            for (k, (z, wt)) in set.atoms().iter().zip(set.weights()).enumerate() {
                writeln!(w, "{},{},{},{}", k + 1, f17(z.re), f17(z.im), f17(*wt))?;
            }
            Ok(())
        }),
        Format::Json => {
            let approx = set.moments(args.moments);
            let exact = moment_vector(&spec, args.moments)?;
            let checks: Vec<MomentCheck> = (0..=args.moments)
                .map(|j| MomentCheck {
                    j,
                    discretized: approx.entries[j],
                    exact: exact.entries[j],
                    error: (approx.entries[j] - exact.entries[j]).norm(),
                    bound: j as f64 * std::f64::consts::PI / args.arcs as f64,
                })
                .collect();
            json(
                "discretize",
                serde_json::json!({
                    "measure": label,
                    "arcs": args.arcs,
                    "radius": (std::f64::consts::PI / args.arcs as f64).cos(),
                    "atoms": set,
                    "moments": checks,
                }),
            )
        }
    }
}

fn dispatch(cli: &Cli, stderr: &mut dyn Write) -> std::result::Result<Document, Failure> {
    match &cli.command {
        Command::Coeffs(a) => Ok(cmd_coeffs(cli.format, a)?),
        Command::Classify(a) => Ok(cmd_classify(cli.format, a)?),
        Command::Peak(a) => cmd_peak(cli.format, a),
        Command::Verify(a) => cmd_verify(cli.format, a),
        Command::Duality(a) => Ok(cmd_duality(cli.format, a, stderr)?),
        Command::Discretize(a) => Ok(cmd_discretize(cli.format, a)?),
    }
}

fn write_document(doc: &Document, out: &mut dyn Write) -> io::Result<()> {
    match doc {
        Document::Json(v) => write_json(&mut *out, v),
        Document::Csv(bytes) => out.write_all(bytes),
    }?;
    out.flush()
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let first = rendered.lines().next().unwrap_or("invalid arguments");
                let _ = writeln!(stderr, "{first}");
            }
            return code;
        }
    };
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start thread pool: {e}");
            return EXIT_VALIDATION;
        }
    };
    let mut notes = Vec::new();
    let result = pool.install(|| dispatch(&cli, &mut notes));
    let _ = stderr.write_all(&notes);
    let (doc, failure) = match result {
        Ok(doc) => (Some(doc), None),
        Err(Failure { error, document }) => (document, Some(error)),
    };
    if let Some(doc) = &doc {
        let written = match &cli.out {
            Some(path) => File::create(path).and_then(|f| write_document(doc, &mut BufWriter::new(f))),
            None => write_document(doc, stdout),
        };
        if let Err(e) = written {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            return EXIT_VALIDATION;
        }
    }
    match failure {
        None => EXIT_OK,
        Some(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_validation() {
                EXIT_VALIDATION
            } else {
                EXIT_CAP
            }
        }
    }
}
