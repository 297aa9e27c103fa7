//! Argument definitions and command dispatch.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use kss_core::{beta_form, certify_domain, s_invariant_form, s_invariant_numeric, CoefficientPoint, PairFamily};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::CliError;
use crate::plot::{self, PlotFormat};
use crate::report::{verdict_text, DomainReport, MuReport, VerdictReport};
use crate::spec::{exact_vec, parse_divisor, parse_point, Exact, FamilySpec, FORMAT_VERSION};

#[derive(Debug, Parser)]
#[command(name = "kss", version, about = "Exact K-semistable domains of hypersurface pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the beta form of a divisor as an affine form in the coefficients.
    Beta {
        #[command(flatten)]
        input: Input,
        /// Boundary label, or external:<degree> for a prime divisor outside the boundary.
        divisor: String,
        /// Evaluate at this comma-separated coefficient point.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Report the necessary region cut out by beta >= 0 on the boundary.
    Domain(Input),
    /// Certify the domain from anchors and report the verdict.
    Certify(Input),
    /// Print mu, the minimum coefficient sum over the domain.
    Mu(Input),
    /// Compare the exact S-invariant with composite Simpson quadrature.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Boundary label, or external:<degree>.
        divisor: String,
        /// Coefficient point (defaults to the origin).
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        subdivisions: usize,
    },
    /// Draw the domain of a two-coefficient family.
    Plot {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = PlotFormat::Svg)]
        format: PlotFormat,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Shade the part of the unit square outside the necessary region.
        #[arg(long)]
        shade_excluded: bool,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// Family specification (JSON).
    pub spec: PathBuf,
    /// Machine-readable JSON output.
    #[arg(long)]
    pub json: bool,
}

impl Input {
    fn load(&self) -> Result<(FamilySpec, PairFamily), CliError> {
        let spec = load_spec(&self.spec)?;
        let family = spec.family()?;
        Ok((spec, family))
    }
}

pub fn load_spec(path: &Path) -> Result<FamilySpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    FamilySpec::from_json(&text)
}

#[derive(Debug, Serialize)]
struct BetaOutput {
    format_version: u32,
    divisor: String,
    constant: Exact,
    coeffs: Vec<Exact>,
    text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<Vec<Exact>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Exact>,
}

#[derive(Debug, Serialize)]
struct MuOutput {
    format_version: u32,
    verdict: VerdictReport,
    mu: MuReport,
}

#[derive(Debug, Serialize)]
struct OracleOutput {
    format_version: u32,
    divisor: String,
    at: Vec<Exact>,
    subdivisions: usize,
    exact: Exact,
    numeric: f64,
    diff: f64,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialises");
    s.push('\n');
    s
}

fn point_arg(family: &PairFamily, at: Option<&str>) -> Result<CoefficientPoint, CliError> {
    let point = match at {
        Some(s) => parse_point(s)?,
        None => CoefficientPoint::origin(family.k()),
    };
    family.check_point(&point)?;
    Ok(point)
}

fn certify(spec: &FamilySpec, family: &PairFamily) -> Result<DomainReport, CliError> {
    let verdict = certify_domain(family, &spec.anchors()?)?;
    DomainReport::certified(family, &verdict)
}

/// Runs a command and returns what it prints on standard output.
pub fn run(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Beta { input, divisor, at } => {
            let (_, family) = input.load()?;
            let e = parse_divisor(&family, divisor)?;
            let form = beta_form(&family, &e)?;
            let point = at.as_deref().map(|s| point_arg(&family, Some(s))).transpose()?;
            let value = point.as_ref().map(|p| form.evaluate(p));
            let names = kss_core::model::variable_names(family.k());
            if input.json {
                return Ok(to_json(&BetaOutput {
                    format_version: FORMAT_VERSION,
                    divisor: divisor.clone(),
                    constant: form.constant().into(),
                    coeffs: exact_vec(form.coeffs()),
                    text: form.render(&names),
                    at: point.as_ref().map(|p| exact_vec(p.coords())),
                    value: value.map(Exact),
                }));
            }
            Ok(match value {
                Some(v) => format!("{v}\n"),
                None => format!("{}\n", form.render(&names)),
            })
        }
        Command::Domain(input) => {
            let (_, family) = input.load()?;
            let report = DomainReport::necessary(&family)?;
            Ok(if input.json { report.to_json() + "\n" } else { report.to_text() })
        }
        Command::Certify(input) => {
            let (spec, family) = input.load()?;
            let report = certify(&spec, &family)?;
            Ok(if input.json { report.to_json() + "\n" } else { report.to_text() })
        }
        Command::Mu(input) => {
            let (spec, family) = input.load()?;
            let report = certify(&spec, &family)?;
            let verdict = report.verdict.expect("certified report carries a verdict");
            if input.json {
                return Ok(to_json(&MuOutput {
                    format_version: FORMAT_VERSION,
                    verdict,
                    mu: report.mu.clone(),
                }));
            }
            Ok(if report.mu_is_exact() {
                format!("{}\n", report.mu_text())
            } else {
                format!("{} (verdict {})\n", report.mu_text(), verdict_text(verdict))
            })
        }
        Command::Oracle {
            input,
            divisor,
            at,
            subdivisions,
        } => {
            let (_, family) = input.load()?;
            let e = parse_divisor(&family, divisor)?;
            let point = point_arg(&family, at.as_deref())?;
            let level = family.level(&point)?;
            if level < num_traits::Zero::zero() {
                return Err(CliError::contract(format!(
                    "the point {point} has negative level {level}; the oracle needs level >= 0"
                )));
            }
            let exact = s_invariant_form(&family, &e)?.evaluate(&point);
            let numeric = s_invariant_numeric(&family, &point, &e, *subdivisions)?;
            let diff = (numeric - exact.to_f64().unwrap_or(f64::NAN)).abs();
            if input.json {
                return Ok(to_json(&OracleOutput {
                    format_version: FORMAT_VERSION,
                    divisor: divisor.clone(),
                    at: exact_vec(point.coords()),
                    subdivisions: *subdivisions,
                    exact: exact.into(),
                    numeric,
                    diff,
                }));
            }
            Ok(format!("exact {exact}, numeric {numeric:.9}, diff {diff:.3e}\n"))
        }
        Command::Plot {
            input,
            format,
            out,
            shade_excluded,
        } => {
            let (spec, family) = input.load()?;
            plot::require_planar(family.k())?;
            let report = certify(&spec, &family)?;
            let drawing = plot::render(&report, *format, *shade_excluded)?;
            match out {
                Some(path) => {
                    fs::write(path, &drawing)
                        .map_err(|e| CliError::contract(format!("cannot write {}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(drawing),
            }
        }
    }
}
