//! Problem files: JSON describing a divisor system, a command and its options.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use nahyp::plane::ProjectivePoint;
use nahyp::poly::{
    extend_field, parse_poly, parse_poly_in_field, parse_scalar, MultiPoly, NumberField,
    PolynomialMap, Scalar, UniPoly,
};
use nahyp::position::{Divisor, DivisorSystem};
use nahyp::series::{Tail, ValuedScalar};
use nahyp::Exec;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Decide,
    CheckSmooth,
    CheckTransversal,
    CheckGeneralPosition,
    Inflexion,
    FindInflexions,
    Witness,
    Verify,
    Degeneracy,
    Newton,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Decide => "decide",
            Command::CheckSmooth => "check-smooth",
            Command::CheckTransversal => "check-transversal",
            Command::CheckGeneralPosition => "check-general-position",
            Command::Inflexion => "inflexion",
            Command::FindInflexions => "find-inflexions",
            Command::Witness => "witness",
            Command::Verify => "verify",
            Command::Degeneracy => "degeneracy",
            Command::Newton => "newton",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    ambient: RawAmbient,
    #[serde(default)]
    field: Option<RawField>,
    #[serde(default)]
    divisors: Vec<RawDivisor>,
    #[serde(default)]
    command: Option<Command>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAmbient {
    dim: usize,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawField {
    Tag(String),
    Extension { minpoly: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDivisor {
    name: String,
    poly: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    point: Option<Vec<String>>,
    divisor: Option<String>,
    #[serde(alias = "constants")]
    ratios: Option<Vec<String>>,
    witness: Option<Vec<String>>,
    coefficients: Option<Vec<String>>,
    series: Option<Vec<(usize, String)>>,
    tail: Option<RawTail>,
    threshold: Option<String>,
    max_ext_degree: Option<usize>,
    precision: Option<usize>,
    budget: Option<u64>,
    exec: Option<Exec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawTail {
    Tag(String),
    AtLeast { offset: String, slope: String },
}

/// Validated options; absent entries fall back to defaults at run time.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub point: Option<ProjectivePoint>,
    pub divisor: Option<String>,
    pub ratios: Option<Vec<Scalar>>,
    pub witness: Option<PolynomialMap>,
    /// Sparse series coefficients, cut to the precision when run.
    pub series: Option<Vec<(usize, ValuedScalar)>>,
    pub tail: Option<Tail>,
    pub threshold: Option<Scalar>,
    pub max_ext_degree: Option<usize>,
    pub precision: Option<usize>,
    pub budget: Option<u64>,
    pub exec: Option<Exec>,
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub dim: usize,
    pub field: Option<Arc<NumberField>>,
    /// Absent for commands that take no divisors.
    pub system: Option<DivisorSystem>,
    pub command: Option<Command>,
    pub options: Options,
}

impl ProblemFile {
    pub fn system(&self) -> Result<&DivisorSystem, CliError> {
        self.system
            .as_ref()
            .ok_or_else(|| CliError::Schema("this command needs at least one divisor".into()))
    }
}

/// 1-based line and column of byte `offset`.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Parse errors inside a string value are anchored at the string's place in
/// the file when it can be found there verbatim.
struct Locator<'a> {
    text: &'a str,
}

impl Locator<'_> {
    fn error(&self, what: &str, value: &str, err: nahyp::Error) -> CliError {
        let inner = match &err {
            nahyp::Error::Syntax { position, .. }
            | nahyp::Error::UnknownVariable { position, .. }
            | nahyp::Error::NegativeExponent { position } => Some(*position),
            _ => None,
        };
        let quoted = serde_json::to_string(value).unwrap_or_default();
        let at = self.text.find(&quoted).map(|start| {
            // one for the opening quote; positions inside escapes are approximate
            line_col(self.text, start + 1 + inner.unwrap_or(0))
        });
        CliError::Parse {
            what: what.to_string(),
            at,
            source: err,
        }
    }
}

fn var_names(dim: usize) -> Vec<String> {
    (0..=dim).map(|i| format!("X{i}")).collect()
}

fn parse_field(raw: Option<RawField>) -> Result<Option<Arc<NumberField>>, CliError> {
    match raw {
        None => Ok(None),
        Some(RawField::Tag(t)) if t == "Q" || t == "QQ" => Ok(None),
        Some(RawField::Tag(t)) => Err(CliError::Schema(format!(
            "unknown field `{t}`; use \"Q\" or {{\"minpoly\": ...}}"
        ))),
        Some(RawField::Extension { minpoly }) => {
            let m = parse_poly(&minpoly, &["u"]).map_err(CliError::Core)?;
            let coeffs = (0..=m.degree_in(0).unwrap_or(0))
                .map(|k| m.coeff(&nahyp::poly::Monomial::new(vec![k])))
                .collect();
            Ok(Some(
                extend_field(&UniPoly::new(coeffs)).map_err(CliError::Core)?,
            ))
        }
    }
}

fn to_uni(p: &MultiPoly) -> UniPoly {
    let d = p.degree_in(0).unwrap_or(0);
    UniPoly::new(
        (0..=d)
            .map(|k| p.coeff(&nahyp::poly::Monomial::new(vec![k])))
            .collect(),
    )
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, CliError> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| CliError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let loc = Locator { text };
    let dim = raw.ambient.dim;
    if dim == 0 {
        return Err(CliError::Schema(
            "ambient dimension must be at least 1".into(),
        ));
    }
    let field = parse_field(raw.field)?;
    let names = var_names(dim);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();

    let mut divisors = Vec::new();
    for d in &raw.divisors {
        let poly = parse_poly_in_field(&d.poly, &refs, field.as_ref()).map_err(|e| match &e {
            nahyp::Error::UnknownVariable { name, .. }
                if name
                    .strip_prefix('X')
                    .is_some_and(|k| k.parse::<usize>().is_ok()) =>
            {
                CliError::Schema(format!(
                    "divisor {} uses {name}, but ambient dimension {dim} allows only X0..X{dim}",
                    d.name
                ))
            }
            _ => loc.error(&format!("divisor {}", d.name), &d.poly, e),
        })?;
        divisors.push(Divisor {
            name: d.name.clone(),
            poly,
        });
    }
    let system = if divisors.is_empty() {
        None
    } else {
        Some(DivisorSystem::new(dim, divisors).map_err(CliError::Core)?)
    };

    let o = raw.options;
    let scalar =
        |what: &str, s: &String| parse_scalar(s, field.as_ref()).map_err(|e| loc.error(what, s, e));
    let point = match &o.point {
        None => None,
        Some(cs) => {
            if cs.len() != dim + 1 {
                return Err(CliError::Schema(format!(
                    "point needs {} coordinates, got {}",
                    dim + 1,
                    cs.len()
                )));
            }
            let coords = cs
                .iter()
                .map(|c| scalar("point", c))
                .collect::<Result<Vec<_>, _>>()?;
            Some(ProjectivePoint::new(coords).map_err(CliError::Core)?)
        }
    };
    let ratios = o
        .ratios
        .as_ref()
        .map(|rs| rs.iter().map(|r| scalar("ratio", r)).collect())
        .transpose()?;
    let witness = match &o.witness {
        None => None,
        Some(cs) => {
            let comps = cs
                .iter()
                .map(|c| {
                    parse_poly_in_field(c, &["z"], field.as_ref())
                        .map(|p| to_uni(&p))
                        .map_err(|e| loc.error("witness", c, e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(PolynomialMap::new(comps).map_err(CliError::Core)?)
        }
    };
    let series = match (&o.coefficients, &o.series) {
        (Some(_), Some(_)) => {
            return Err(CliError::Schema(
                "give either `coefficients` or `series`, not both".into(),
            ))
        }
        (Some(cs), None) => Some(
            cs.iter()
                .enumerate()
                .map(|(i, c)| (i, c.clone()))
                .collect::<Vec<_>>(),
        ),
        (None, Some(ps)) => Some(ps.clone()),
        (None, None) => None,
    };
    let series = series
        .map(|ps| {
            ps.iter()
                .map(|(i, c)| {
                    ValuedScalar::parse(c)
                        .map(|v| (*i, v))
                        .map_err(|e| loc.error("series coefficient", c, e))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let rational = |what: &str, s: &String| -> Result<nahyp::poly::Rational, CliError> {
        scalar(what, s)?
            .as_rational()
            .cloned()
            .ok_or_else(|| CliError::Schema(format!("{what} must be rational")))
    };
    let tail = match &o.tail {
        None => None,
        Some(RawTail::Tag(t)) => match t.as_str() {
            "zero" => Some(Tail::Zero),
            "unknown" => Some(Tail::Unknown),
            other => {
                return Err(CliError::Schema(format!(
                "unknown tail `{other}`; use \"zero\", \"unknown\" or {{\"offset\", \"slope\"}}"
            )))
            }
        },
        Some(RawTail::AtLeast { offset, slope }) => Some(Tail::AtLeast {
            offset: rational("tail offset", offset)?,
            slope: rational("tail slope", slope)?,
        }),
    };
    let threshold = o
        .threshold
        .as_ref()
        .map(|t| scalar("threshold", t))
        .transpose()?;
    if threshold
        .as_ref()
        .is_some_and(|t| t.as_rational().is_none())
    {
        return Err(CliError::Schema("threshold must be rational".into()));
    }
    Ok(ProblemFile {
        dim,
        field,
        system,
        command: raw.command,
        options: Options {
            point,
            divisor: o.divisor,
            ratios,
            witness,
            series,
            tail,
            threshold,
            max_ext_degree: o.max_ext_degree,
            precision: o.precision,
            budget: o.budget,
            exec: o.exec,
        },
    })
}

pub fn load_problem(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_problem(&text)
}
