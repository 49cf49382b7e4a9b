//! qsep: decide and certify full separability of n-qubit states.
//!
//! Exit codes: 0 = certified or asserted fully separable (or the requested
//! operation succeeded), 1 = witnessed non-separable (or a failed
//! verification), 2 = inconclusive, 3 = usage, parse, or validation error,
//! 4 = I/O error.

mod files;
mod render;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qsep_core::{
    adjusted_from_density, assemble_analysis, analyze, diagonal_family, diagonal_family_necessary,
    ghz_projector, mu_state, mu_sufficient, peres_subsets, peres_test_with_tolerance,
    product_decomposition, product_density, sharpness_report, sharpness_state, spin_from_density,
    spin_norm_decomposition, verify_decomposition, werner, werner_decomposition, werner_threshold,
    AnalysisReport, AnalyzeOptions, BitIndex, CriterionResult, DensityMatrix,
    DiagonalFamilySpec, FamilyFinding, FamilyRule, ProductSpec, SeparableDecomposition,
    SharpnessSpec, Sign, WernerSpec, X_AXIS, Y_AXIS, Z_AXIS,
};

#[derive(Debug)]
pub enum CliError {
    Core(qsep_core::Error),
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    Io {
        context: String,
        source: std::io::Error,
    },
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Parse { path, line, msg } => write!(f, "{path}: line {line}: {msg}"),
            CliError::Io { context, source } => write!(f, "{context}: {source}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<qsep_core::Error> for CliError {
    fn from(e: qsep_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 4,
            _ => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qsep",
    version,
    about = "Decide and certify full separability of n-qubit density matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

// Parsed once at startup; the variant size spread is irrelevant.
#[allow(clippy::large_enum_variant)]
#[derive(Subcommand)]
enum Command {
    /// Run the separability battery on a state file
    Analyze(AnalyzeArgs),
    /// Construct a family member, analyze it with its family rule, and
    /// optionally write the state or a certificate
    Family(FamilyArgs),
    /// Check a certificate file against a state file
    Verify(VerifyArgs),
    /// Write a state's coefficient table in the chosen basis
    Transform(TransformArgs),
}

#[derive(clap::Args)]
struct BatteryArgs {
    /// Pass slack for partial-transpose eigenvalues and certificate checks
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Comma-separated cut positions for the cross-term test (default: all)
    #[arg(long, value_delimiter = ',')]
    cuts: Option<Vec<usize>>,
    /// Transpose every proper qubit subset instead of single qubits
    #[arg(long)]
    exhaustive: bool,
    /// Worker threads for the transpose battery (default: serial)
    #[arg(long)]
    jobs: Option<usize>,
    /// Attempt a certificate and report on it
    #[arg(long)]
    decompose: bool,
    /// Write the certificate to this path (implies --decompose)
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    /// State file to analyze
    state: PathBuf,
    #[command(flatten)]
    battery: BatteryArgs,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    /// White noise mixed with a cat projector
    Werner,
    /// A pure cat projector
    Ghz,
    /// (I +/- X1 x ... x Xn) / 2^n for chosen axes
    Product,
    /// Diagonal plus anti-diagonal family from weight vectors t+/t-
    Diagonal,
    /// White noise mixed with a diagonal-family member
    Mu,
    /// Constant-diagonal banded family over c, d
    Sharpness,
}

#[derive(clap::Args)]
struct FamilyArgs {
    /// Family to construct
    name: FamilyName,
    /// Qubit count
    #[arg(long)]
    n: Option<usize>,
    /// Mixing weight (werner, mu)
    #[arg(long)]
    s: Option<f64>,
    /// Cat label as a bit string with leading bit 0 (werner, ghz)
    #[arg(long)]
    j: Option<String>,
    /// Cat sign: + or - (werner, ghz, product)
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    /// First inner band value (sharpness)
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Second inner band value (sharpness)
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    /// Sparse + weights "index:w,index:w" over 0..2^(n-1) (diagonal)
    #[arg(long)]
    tplus: Option<String>,
    /// Sparse - weights (diagonal)
    #[arg(long)]
    tminus: Option<String>,
    /// Sparse + weights of the mixed-in member (mu)
    #[arg(long)]
    uplus: Option<String>,
    /// Sparse - weights of the mixed-in member (mu)
    #[arg(long)]
    uminus: Option<String>,
    /// Product axes per qubit, comma-separated: x, -y, z or triples a:b:c
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[command(flatten)]
    battery: BatteryArgs,
    /// Write the constructed state file here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Certificate file
    certificate: PathBuf,
    /// State file the certificate claims to decompose
    state: PathBuf,
    /// Largest allowed entrywise deviation
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Spin,
    Adjusted,
}

#[derive(clap::Args)]
struct TransformArgs {
    /// State file to expand
    state: PathBuf,
    /// Target basis
    #[arg(long, value_enum, default_value_t = BasisArg::Spin)]
    basis: BasisArg,
    /// Write the table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => run_analyze(&args),
        Command::Family(args) => run_family(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Transform(args) => run_transform(&args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => files::write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Flag checks that must not wait for file reads to succeed.
fn validate_battery(battery: &BatteryArgs) -> Result<(), CliError> {
    if battery.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".to_string()));
    }
    Ok(())
}

/// Run the core battery, farming the transpose subsets out to a thread
/// pool when --jobs asks for one. Results keep subset order either way.
fn run_battery(
    rho: &DensityMatrix,
    battery: &BatteryArgs,
) -> Result<AnalysisReport, CliError> {
    let opts = AnalyzeOptions {
        tolerance: battery.tol,
        cuts: battery.cuts.clone(),
        exhaustive_peres: battery.exhaustive,
    };
    match battery.jobs {
        None | Some(0) | Some(1) => analyze(rho, &opts).map_err(Into::into),
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?;
            let subsets = peres_subsets(rho.qubits(), opts.exhaustive_peres);
            let peres: Result<Vec<_>, qsep_core::Error> = pool.install(|| {
                subsets
                    .par_iter()
                    .map(|s| {
                        peres_test_with_tolerance(rho, s, opts.tolerance)
                            .map(|r| (s.clone(), r))
                    })
                    .collect()
            });
            assemble_analysis(rho, &opts, peres?).map_err(Into::into)
        }
    }
}

/// Which constructor backs a certificate request.
enum CertRoute {
    Werner(WernerSpec),
    Product(ProductSpec),
    SpinNorm,
}

fn build_certificate(
    route: &CertRoute,
    rho: &DensityMatrix,
) -> Result<SeparableDecomposition, qsep_core::Error> {
    match route {
        CertRoute::Werner(spec) => werner_decomposition(spec),
        CertRoute::Product(spec) => Ok(product_decomposition(spec)),
        CertRoute::SpinNorm => spin_norm_decomposition(rho),
    }
}

/// Try the certificate route, report the outcome, and write the file if a
/// path was given. An out-of-bounds input renders as "none" rather than
/// failing the command.
fn certificate_section(
    rho: &DensityMatrix,
    route: &CertRoute,
    cert_path: Option<&Path>,
    tol: f64,
) -> Result<String, CliError> {
    match build_certificate(route, rho) {
        Ok(dec) => {
            let vr = verify_decomposition(&dec, rho, tol)?;
            let mut s = format!(
                "certificate: {} terms, reassembles within {}\n",
                dec.terms.len(),
                files::fmt_f64(vr.max_deviation)
            );
            for v in &vr.violations {
                s.push_str(&format!("certificate violation: {v}\n"));
            }
            if let Some(path) = cert_path {
                files::write_file(path, &files::render_certificate(&dec))?;
                s.push_str(&format!("certificate written to {}\n", path.display()));
            }
            Ok(s)
        }
        Err(qsep_core::Error::NotCertifiable {
            quantity,
            value,
            bound,
        }) => Ok(format!(
            "certificate: none ({quantity} {} exceeds bound {})\n",
            files::fmt_f64(value),
            files::fmt_f64(bound)
        )),
        Err(e) => Err(e.into()),
    }
}

fn run_analyze(args: &AnalyzeArgs) -> Result<i32, CliError> {
    validate_battery(&args.battery)?;
    let rho = files::read_state(&args.state)?;
    let report = run_battery(&rho, &args.battery)?;
    let mut text = render::render_analysis(&report);
    if args.battery.decompose || args.battery.cert.is_some() {
        text.push_str(&certificate_section(
            &rho,
            &CertRoute::SpinNorm,
            args.battery.cert.as_deref(),
            args.battery.tol,
        )?);
    }
    text.push_str(&render::verdict_line(report.overall));
    text.push('\n');
    emit(args.out.as_deref(), &text)?;
    Ok(render::exit_code(report.overall))
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| usage(format!("{flag} is required for the {family} family")))
}

fn parse_bit_label(n: usize, text: Option<&str>) -> Result<BitIndex, CliError> {
    match text {
        None => BitIndex::zeros(n).map_err(Into::into),
        Some(t) => {
            let j: BitIndex = t.parse().map_err(CliError::Core)?;
            if j.len() != n {
                return Err(usage(format!(
                    "--j has {} bits but --n is {n}",
                    j.len()
                )));
            }
            Ok(j)
        }
    }
}

fn parse_sign(text: Option<&str>) -> Result<Sign, CliError> {
    match text {
        None => Ok(Sign::Plus),
        Some(t) => t.parse().map_err(CliError::Core),
    }
}

/// "index:weight,index:weight" into sparse pairs.
fn parse_pairs(text: Option<&str>, flag: &str) -> Result<Vec<(usize, f64)>, CliError> {
    let Some(text) = text else {
        return Ok(Vec::new());
    };
    text.split(',')
        .map(|item| {
            let (idx, w) = item
                .split_once(':')
                .ok_or_else(|| usage(format!("{flag}: expected index:weight, got {item:?}")))?;
            let idx = idx
                .trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("{flag}: invalid index {idx:?}")))?;
            let w = w
                .trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("{flag}: invalid weight {w:?}")))?;
            Ok((idx, w))
        })
        .collect()
}

/// Per-qubit axes: named x/y/z with optional sign, or colon triples.
fn parse_axes(text: &str) -> Result<Vec<[f64; 3]>, CliError> {
    text.split(',')
        .map(|token| {
            let token = token.trim();
            match token {
                "x" | "+x" => Ok(X_AXIS),
                "-x" => Ok([-1.0, 0.0, 0.0]),
                "y" | "+y" => Ok(Y_AXIS),
                "-y" => Ok([0.0, -1.0, 0.0]),
                "z" | "+z" => Ok(Z_AXIS),
                "-z" => Ok([0.0, 0.0, -1.0]),
                _ => {
                    let parts: Vec<&str> = token.split(':').collect();
                    if parts.len() != 3 {
                        return Err(usage(format!(
                            "--m: axis {token:?} is neither x/y/z nor a:b:c"
                        )));
                    }
                    let mut m = [0.0f64; 3];
                    for (slot, p) in m.iter_mut().zip(&parts) {
                        *slot = p.trim().parse::<f64>().map_err(|_| {
                            usage(format!("--m: invalid component {:?}", p.trim()))
                        })?;
                    }
                    Ok(m)
                }
            }
        })
        .collect()
}

struct FamilyOutcome {
    rho: DensityMatrix,
    finding: Option<FamilyFinding>,
    extras: String,
    route: CertRoute,
}

fn build_family(args: &FamilyArgs) -> Result<FamilyOutcome, CliError> {
    const TOL: f64 = qsep_core::criteria::COEFFICIENT_TOLERANCE;
    match args.name {
        FamilyName::Werner => {
            let n = require(args.n, "--n", "werner")?;
            let s = require(args.s, "--s", "werner")?;
            let j = parse_bit_label(n, args.j.as_deref())?;
            let sign = parse_sign(args.sign.as_deref())?;
            let spec = WernerSpec::new(n, s, j, sign)?;
            let threshold = werner_threshold(n)?;
            let extras = format!(
                "cat mixing s = {}, separability threshold 1/(2^(n-1)+1) = {}\n",
                files::fmt_f64(s),
                files::fmt_f64(threshold)
            );
            let finding = FamilyFinding {
                label: "cat mixture vs threshold".to_string(),
                rule: FamilyRule::IfAndOnlyIf { certified: true },
                result: CriterionResult::from_margin(threshold - s, TOL, None),
            };
            Ok(FamilyOutcome {
                rho: werner(&spec),
                finding: Some(finding),
                extras,
                route: CertRoute::Werner(spec),
            })
        }
        FamilyName::Ghz => {
            let n = match (args.n, args.j.as_deref()) {
                (Some(n), _) => n,
                (None, Some(j)) => j.len(),
                (None, None) => return Err(usage("--n or --j is required for the ghz family")),
            };
            let j = parse_bit_label(n, args.j.as_deref())?;
            let sign = parse_sign(args.sign.as_deref())?;
            let rho = ghz_projector(&j, sign)?;
            Ok(FamilyOutcome {
                rho,
                finding: None,
                extras: String::new(),
                route: CertRoute::SpinNorm,
            })
        }
        FamilyName::Product => {
            let axes = parse_axes(&require(args.m.clone(), "--m", "product")?)?;
            if let Some(n) = args.n {
                if n != axes.len() {
                    return Err(usage(format!(
                        "--n is {n} but --m lists {} axes",
                        axes.len()
                    )));
                }
            }
            let sign = parse_sign(args.sign.as_deref())?;
            let spec = ProductSpec::new(axes, sign)?;
            let finding = FamilyFinding {
                label: "product bracket (always fully separable)".to_string(),
                rule: FamilyRule::IfAndOnlyIf { certified: true },
                result: CriterionResult::from_margin(0.0, TOL, None),
            };
            Ok(FamilyOutcome {
                rho: product_density(&spec),
                finding: Some(finding),
                extras: String::new(),
                route: CertRoute::Product(spec),
            })
        }
        FamilyName::Diagonal => {
            let n = require(args.n, "--n", "diagonal")?;
            let tplus = parse_pairs(args.tplus.as_deref(), "--tplus")?;
            let tminus = parse_pairs(args.tminus.as_deref(), "--tminus")?;
            let spec = DiagonalFamilySpec::from_pairs(n, &tplus, &tminus)?;
            let necessary = diagonal_family_necessary(&spec);
            let invariant = spec.depolarization_invariant();
            let mut extras = format!(
                "depolarization invariant (t+ = t- off the lead slot): {}\n",
                if invariant { "yes" } else { "no" }
            );
            let finding = if invariant {
                Some(FamilyFinding {
                    label: "balanced-band weight condition".to_string(),
                    rule: FamilyRule::IfAndOnlyIf { certified: false },
                    result: necessary,
                })
            } else {
                extras.push_str(&format!(
                    "weight condition (necessary only here): {}  margin {}\n",
                    necessary.verdict,
                    files::fmt_f64(necessary.margin)
                ));
                None
            };
            Ok(FamilyOutcome {
                rho: diagonal_family(&spec),
                finding,
                extras,
                route: CertRoute::SpinNorm,
            })
        }
        FamilyName::Mu => {
            let n = require(args.n, "--n", "mu")?;
            let s = require(args.s, "--s", "mu")?;
            let uplus = parse_pairs(args.uplus.as_deref(), "--uplus")?;
            let uminus = parse_pairs(args.uminus.as_deref(), "--uminus")?;
            let u = DiagonalFamilySpec::from_pairs(n, &uplus, &uminus)?;
            let result = mu_sufficient(s, &u);
            let extras = format!(
                "white-noise mixing bound: s = {}, bound {}\n",
                files::fmt_f64(s),
                files::fmt_f64(s + result.margin)
            );
            let finding = FamilyFinding {
                label: "white-noise mixing bound".to_string(),
                rule: FamilyRule::Sufficient { certified: false },
                result,
            };
            Ok(FamilyOutcome {
                rho: mu_state(s, &u)?,
                finding: Some(finding),
                extras,
                route: CertRoute::SpinNorm,
            })
        }
        FamilyName::Sharpness => {
            let n = require(args.n, "--n", "sharpness")?;
            let c = require(args.c, "--c", "sharpness")?;
            let d = require(args.d, "--d", "sharpness")?;
            let spec = SharpnessSpec::new(n, c, d)?;
            let report = sharpness_report(&spec)?;
            let extras = render::render_sharpness_extras(&report);
            let finding = FamilyFinding {
                label: "band equality".to_string(),
                rule: FamilyRule::IfAndOnlyIf { certified: true },
                result: report.decision.clone(),
            };
            Ok(FamilyOutcome {
                rho: sharpness_state(&spec),
                finding: Some(finding),
                extras,
                route: CertRoute::SpinNorm,
            })
        }
    }
}

fn run_family(args: &FamilyArgs) -> Result<i32, CliError> {
    validate_battery(&args.battery)?;
    let outcome = build_family(args)?;
    if let Some(path) = &args.out {
        files::write_file(path, &files::render_state(&outcome.rho))?;
    }
    let mut report = run_battery(&outcome.rho, &args.battery)?;
    if let Some(finding) = outcome.finding {
        report.apply_family_finding(finding);
    }
    let mut text = render::render_analysis(&report);
    text.push_str(&outcome.extras);
    if args.battery.decompose || args.battery.cert.is_some() {
        text.push_str(&certificate_section(
            &outcome.rho,
            &outcome.route,
            args.battery.cert.as_deref(),
            args.battery.tol,
        )?);
    }
    if let Some(path) = &args.out {
        text.push_str(&format!("state written to {}\n", path.display()));
    }
    text.push_str(&render::verdict_line(report.overall));
    text.push('\n');
    print!("{text}");
    Ok(render::exit_code(report.overall))
}

fn run_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let dec = files::read_certificate(&args.certificate)?;
    let rho = files::read_state(&args.state)?;
    let report = verify_decomposition(&dec, &rho, args.tol)?;
    let text = render::render_verify(&report, args.tol);
    emit(args.out.as_deref(), &text)?;
    Ok(if report.pass { 0 } else { 1 })
}

fn run_transform(args: &TransformArgs) -> Result<i32, CliError> {
    let rho = files::read_state(&args.state)?;
    let table = match args.basis {
        BasisArg::Spin => spin_from_density(&rho),
        BasisArg::Adjusted => adjusted_from_density(&rho),
    };
    emit(args.out.as_deref(), &files::render_table(&table))?;
    Ok(0)
}
