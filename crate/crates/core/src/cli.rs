//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 input error, 2 check failed, 3 preconditions
//! unmet, 4 numerical failure, 5 generation cap exceeded. Zero indices are
//! one-based on the command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::figure::{bgm_figure, siebeck_figure};
use crate::geom::convex_hull_indexed;
use crate::matricial::{build_construction, critical_points_from};
use crate::numlin::principal_submatrix;
use crate::poly::{Polynomial, RootSet};
use crate::rng::{random_zeros, Constraint, SampleRng, RNG_ID};
use crate::theorems::{self, CheckReport, Verdict};
use crate::tolerance::{Tolerances, DEFAULT_SAMPLES};

pub const TOOL: &str = "critloc";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_UNMET: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;
pub const EXIT_CAP: i32 = 5;

/// A polynomial given by its zeros or by ascending coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn to_complex(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

/// `[re, im]` with negative zero printed as zero.
pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re + 0.0, z.im + 0.0]
}

impl InstanceFile {
    pub fn from_roots(zeros: &RootSet, label: Option<String>) -> Self {
        Self {
            roots: Some(zeros.iter().map(|&z| pair(z)).collect()),
            coeffs: None,
            label,
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let f: Self = serde_json::from_str(text).map_err(|e| format!("malformed instance: {e}"))?;
        match (&f.roots, &f.coeffs) {
            (Some(_), Some(_)) => return Err("instance has both roots and coeffs".into()),
            (None, None) => return Err("instance needs roots or coeffs".into()),
            (Some(v), None) | (None, Some(v)) if v.is_empty() => return Err("instance sequence is empty".into()),
            _ => {}
        }
        Ok(f)
    }

    /// The zeros, computing them from the coefficients if needed.
    pub fn zeros(&self) -> Result<RootSet, Error> {
        if let Some(r) = &self.roots {
            return Ok(RootSet::new(to_complex(r)));
        }
        let p = Polynomial::new(to_complex(self.coeffs.as_deref().unwrap_or(&[])))?;
        if p.degree() == 0 {
            return Err(Error::InvalidArgument("constant polynomial has no zeros".into()));
        }
        p.roots()
    }
}

/// Settings shared by the checking commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub sweep_samples: usize,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            tolerances: Tolerances::default(),
            sweep_samples: DEFAULT_SAMPLES,
            output_format: OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Matricial,
    Companion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Main,
    GaussLucas,
    Interlacing,
    Siebeck,
    Bgm,
    EllipticalRange,
    EdgePreimage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstraintArg {
    None,
    Real,
    SiebeckOk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Siebeck,
    Bgm,
}

#[derive(Debug, Parser)]
#[command(name = TOOL, version, about = "Critical points of polynomials as eigenvalues of compressions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the critical points of an instance.
    CriticalPoints {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "matricial")]
        method: Method,
        /// Deleted row and column for the matricial method, one-based.
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Run a theorem checker on an instance.
    Check {
        input: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Hull edge for edge-preimage as two one-based zero indices, `i,j`.
        #[arg(long)]
        edge: Option<String>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Write seeded random instances.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "none")]
        constraint: ConstraintArg,
        /// Directory for `instance-NNNN.json` files; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit figure layers for an instance after checking it.
    Figure {
        input: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "svg")]
        format: OutputFormat,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long)]
    tol_match: Option<f64>,
    #[arg(long)]
    tol_geom: Option<f64>,
    #[arg(long)]
    tol_linalg: Option<f64>,
    #[arg(long)]
    tol_hausdorff: Option<f64>,
}

impl RunArgs {
    fn config(&self, format: OutputFormat) -> Result<RunConfig, Failure> {
        if self.samples < 8 {
            return Err(Failure::input(format!(
                "--samples must be at least 8, got {}",
                self.samples
            )));
        }
        let mut t = Tolerances::default();
        for (value, slot, flag) in [
            (self.tol_match, &mut t.matching, "--tol-match"),
            (self.tol_geom, &mut t.geometry, "--tol-geom"),
            (self.tol_linalg, &mut t.linalg, "--tol-linalg"),
            (self.tol_hausdorff, &mut t.hausdorff, "--tol-hausdorff"),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Failure::input(format!("{flag} must be positive and finite, got {v}")));
                }
                *slot = v;
            }
        }
        Ok(RunConfig {
            seed: 0,
            tolerances: t,
            sweep_samples: self.samples,
            output_format: format,
        })
    }
}

/// Output preamble naming the producer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub rng: String,
}

impl Header {
    pub fn current() -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            rng: RNG_ID.into(),
        }
    }
}

/// JSON document printed by `check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutput {
    pub header: Header,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub report: CheckReport,
}

/// JSON document printed by `figure --format json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureOutput {
    pub header: Header,
    pub transform: crate::figure::ViewTransform,
    pub layers: crate::figure::FigureData,
    pub report: CheckReport,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GenerationCap { .. } => EXIT_CAP,
            ref e if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::input(format!("{}: {e}", path.display()))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_PASS;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::CriticalPoints {
            input,
            method,
            index,
            format,
        } => {
            let instance = read_instance(&input)?;
            let text = cmd_critical_points(&instance, method, index, format)?;
            emit(out, &text)?;
            Ok(EXIT_PASS)
        }
        Command::Check {
            input,
            theorem,
            edge,
            run,
            format,
        } => {
            let config = run.config(format)?;
            let instance = read_instance(&input)?;
            let edge = edge.as_deref().map(parse_edge).transpose()?;
            let report = cmd_check(&instance, theorem, edge, &config)?;
            emit(out, &render_report(&report, instance.label.clone(), format)?)?;
            Ok(verdict_code(report.verdict))
        }
        Command::Random {
            n,
            count,
            seed,
            constraint,
            out: dir,
        } => {
            let files = cmd_random(n, count, seed, constraint)?;
            match dir {
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
                    for (name, text) in files {
                        let path = dir.join(name);
                        fs::write(&path, text).map_err(|e| io_failure(&path, e))?;
                    }
                }
                None => {
                    for (_, text) in files {
                        emit(out, &text)?;
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Figure {
            input,
            which,
            run,
            format,
            out: path,
        } => {
            let config = run.config(format)?;
            let instance = read_instance(&input)?;
            let (report, text) = cmd_figure(&instance, which, &config)?;
            if report.verdict == Verdict::PreconditionsUnmet {
                return Err(Failure {
                    code: EXIT_UNMET,
                    message: format!(
                        "preconditions unmet: {}",
                        report.unmet.as_deref().unwrap_or("unspecified")
                    ),
                });
            }
            match path {
                Some(p) => fs::write(&p, text).map_err(|e| io_failure(&p, e))?,
                None => emit(out, &text)?,
            }
            Ok(verdict_code(report.verdict))
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::input(format!("writing output: {e}")))
}

fn read_instance(path: &Path) -> Result<InstanceFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    InstanceFile::parse(&text).map_err(|m| Failure::input(format!("{}: {m}", path.display())))
}

fn parse_edge(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::input(format!("--edge expects two one-based indices `i,j`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a - 1, b - 1))
}

pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::PreconditionsUnmet => EXIT_UNMET,
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn cmd_critical_points(
    instance: &InstanceFile,
    method: Method,
    index: usize,
    format: OutputFormat,
) -> Result<String, Failure> {
    let zeros = instance.zeros()?;
    let crit = match method {
        Method::Companion => theorems::oracle_critical_points(&zeros)?,
        Method::Matricial => {
            if zeros.len() < 2 {
                return Err(Failure::input("the matricial method needs at least 2 zeros"));
            }
            if index == 0 || index > zeros.len() {
                return Err(Failure::input(format!(
                    "--index must be in 1..={}, got {index}",
                    zeros.len()
                )));
            }
            critical_points_from(&build_construction(&zeros)?, index - 1)?
        }
    };
    let points: Vec<[f64; 2]> = crit.sorted().iter().map(|&z| pair(z)).collect();
    match format {
        OutputFormat::Json => json_line(&points),
        OutputFormat::Csv => Ok(points.iter().fold(String::from("re,im\n"), |acc, [re, im]| {
            acc + &format!("{re:?},{im:?}\n")
        })),
        OutputFormat::Text => Ok(points.iter().map(|[re, im]| format!("{re:?} {im:?}\n")).collect()),
        OutputFormat::Svg => Err(Failure::input("critical-points supports json, csv and text")),
    }
}

/// Runs a checker on an instance. `edge` holds zero-based indices.
pub fn cmd_check(
    instance: &InstanceFile,
    theorem: Theorem,
    edge: Option<(usize, usize)>,
    config: &RunConfig,
) -> Result<CheckReport, Error> {
    let zeros = instance.zeros()?;
    let t = &config.tolerances;
    let m = config.sweep_samples;
    let mut report = match theorem {
        Theorem::Main => theorems::check_main_theorem(&zeros, t.matching)?,
        Theorem::GaussLucas => theorems::check_gauss_lucas(&zeros, t.geometry)?,
        Theorem::Interlacing => theorems::check_interlacing(&zeros, t.linalg)?,
        Theorem::Siebeck => theorems::check_poor_mans_siebeck(&zeros, m, t.geometry)?,
        Theorem::Bgm => theorems::check_bgm(&zeros, t.geometry)?,
        Theorem::EllipticalRange => elliptical_range_on_instance(&zeros, m, t.hausdorff)?,
        Theorem::EdgePreimage => {
            let edge = match edge {
                Some(e) => Some(e),
                None => first_hull_edge(&zeros)?,
            };
            match edge {
                Some(e) if e.0 < zeros.len() && e.1 < zeros.len() => {
                    theorems::check_edge_preimage(&zeros, e, m, t.geometry)?
                }
                Some(e) => {
                    return Err(Error::IndexOutOfRange {
                        index: e.0.max(e.1) + 1,
                        order: zeros.len(),
                    })
                }
                None => CheckReport::preconditions_unmet(
                    theorems::EDGE_PREIMAGE,
                    "hull has fewer than 3 vertices",
                    Default::default(),
                ),
            }
        }
    };
    for (k, v) in [
        ("matching", t.matching),
        ("geometry", t.geometry),
        ("linalg", t.linalg),
        ("hausdorff", t.hausdorff),
    ] {
        report.tolerances_used.insert(k.into(), v);
    }
    Ok(report)
}

/// The 2x2 matrix whose range the elliptical-range check examines: the
/// construction itself for two zeros, its compression `A_(1)` for three.
fn elliptical_range_on_instance(zeros: &RootSet, m: usize, tol: f64) -> Result<CheckReport, Error> {
    let a = match zeros.len() {
        2 => build_construction(zeros)?.a,
        3 => principal_submatrix(&build_construction(zeros)?.a, 0)?,
        n => {
            return Ok(CheckReport::preconditions_unmet(
                theorems::ELLIPTICAL_RANGE,
                format!("instance needs 2 or 3 zeros to define a 2x2 matrix, got {n}"),
                Default::default(),
            ))
        }
    };
    theorems::check_elliptical_range(&a, m, tol)
}

fn first_hull_edge(zeros: &RootSet) -> Result<Option<(usize, usize)>, Error> {
    if zeros.is_empty() {
        return Ok(None);
    }
    let hull = convex_hull_indexed(zeros, 0.0)?;
    Ok((hull.indices.len() >= 3).then(|| (hull.indices[0], hull.indices[1])))
}

fn render_report(report: &CheckReport, label: Option<String>, format: OutputFormat) -> Result<String, Failure> {
    let verdict = match report.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::PreconditionsUnmet => "preconditions_unmet",
    };
    match format {
        OutputFormat::Json => json_line(&CheckOutput {
            header: Header::current(),
            label,
            report: report.clone(),
        }),
        OutputFormat::Csv => {
            let mut s = String::from("key,value\n");
            s += &format!(
                "theorem,{}\nverdict,{verdict}\nmax_violation,{:?}\n",
                report.theorem, report.max_violation
            );
            for (k, v) in &report.details {
                s += &format!("{k},{v:?}\n");
            }
            for (k, v) in &report.tolerances_used {
                s += &format!("tol.{k},{v:?}\n");
            }
            if let Some(u) = &report.unmet {
                s += &format!("unmet,\"{}\"\n", u.replace('"', "\"\""));
            }
            Ok(s)
        }
        OutputFormat::Text => {
            let mut s = format!(
                "{}: {verdict}\nmax_violation = {:?}\n",
                report.theorem, report.max_violation
            );
            if let Some(u) = &report.unmet {
                s += &format!("unmet: {u}\n");
            }
            for (k, v) in &report.details {
                s += &format!("  {k} = {v:?}\n");
            }
            for (k, v) in &report.tolerances_used {
                s += &format!("  tol.{k} = {v:?}\n");
            }
            Ok(s)
        }
        OutputFormat::Svg => Err(Failure::input("check supports json, csv and text")),
    }
}

/// Instance files `(name, contents)` from one seeded stream.
pub fn cmd_random(
    n: usize,
    count: usize,
    seed: u64,
    constraint: ConstraintArg,
) -> Result<Vec<(String, String)>, Error> {
    if count == 0 {
        return Err(Error::InvalidArgument("--count must be at least 1".into()));
    }
    let (constraint, tag) = match constraint {
        ConstraintArg::None => (Constraint::None, "none"),
        ConstraintArg::Real => (Constraint::Real, "real"),
        ConstraintArg::SiebeckOk => (Constraint::SiebeckOk, "siebeck-ok"),
    };
    let mut rng = SampleRng::new(seed);
    let tol = Tolerances::default().geometry;
    (0..count)
        .map(|k| {
            let zeros = random_zeros(&mut rng, n, constraint, tol)?;
            let label = format!("seed={seed} rng={RNG_ID} n={n} constraint={tag} index={k}");
            let text = serde_json::to_string(&InstanceFile::from_roots(&zeros, Some(label)))
                .map_err(|e| Error::Inconsistent(e.to_string()))?;
            Ok((format!("instance-{k:04}.json"), text + "\n"))
        })
        .collect()
}

/// Checks the instance, then renders the figure. The report comes back so
/// the caller can choose the exit code.
pub fn cmd_figure(instance: &InstanceFile, which: Which, config: &RunConfig) -> Result<(CheckReport, String), Error> {
    let zeros = instance.zeros()?;
    let tol = config.tolerances.geometry;
    let m = config.sweep_samples;
    let report = match which {
        Which::Siebeck => theorems::check_poor_mans_siebeck(&zeros, m, tol)?,
        Which::Bgm => theorems::check_bgm(&zeros, tol)?,
    };
    if report.verdict == Verdict::PreconditionsUnmet {
        return Ok((report, String::new()));
    }
    let data = match which {
        Which::Siebeck => siebeck_figure(&zeros, m)?,
        Which::Bgm => bgm_figure(&zeros)?,
    };
    let text = match config.output_format {
        OutputFormat::Svg => data.to_svg(),
        OutputFormat::Csv => data.to_csv(),
        OutputFormat::Json => {
            let doc = FigureOutput {
                header: Header::current(),
                transform: data.transform(),
                layers: data,
                report: report.clone(),
            };
            serde_json::to_string_pretty(&doc).map_err(|e| Error::Inconsistent(e.to_string()))? + "\n"
        }
        OutputFormat::Text => return Err(Error::InvalidArgument("figure supports svg, json and csv".into())),
    };
    Ok((report, text))
}
