//! Command dispatch and JSON reports.

use nahyp::decision::{decide, degeneracy_bound, Verdict};
use nahyp::elimination::DegeneracyVariety;
use nahyp::plane::{
    find_maximal_inflexions, is_maximal_inflexion, IntersectionPoint, ProjectivePoint,
};
use nahyp::poly::{format_rational, PolynomialMap, Scalar};
use nahyp::position::{
    check_general_position, check_smooth, check_transversal, general_position_report, Divisor,
};
use nahyp::series::{
    certify_nonvanishing_implies_constant, count_zeros, format_valuation, newton_polygon,
    slope_multiset, NonvanishingReport, Tail, TruncatedSeries, DEFAULT_PRECISION,
};
use nahyp::witness::{verify_witness, Witness};
use nahyp::Settings;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::problem::{Command, ProblemFile};

pub fn scalar_json(s: &Scalar) -> Value {
    match s.field() {
        None => Value::String(s.to_string()),
        Some(k) => json!({
            "minpoly": k.minpoly_string(),
            "coords": s.coords_in(k).iter().map(format_rational).collect::<Vec<_>>(),
        }),
    }
}

pub fn point_json(p: &ProjectivePoint) -> Value {
    match p.field() {
        None => json!(p.coord_strings()),
        Some(k) => json!({ "minpoly": k.minpoly_string(), "coords": p.coord_strings() }),
    }
}

fn map_json(f: &PolynomialMap) -> Value {
    let mut v = json!({
        "map": format!("({})", f.to_strings().join(", ")),
        "components": f.to_strings(),
    });
    if let Ok(Some(k)) = f.field() {
        v["field"] = json!(k.minpoly_string());
    }
    v
}

fn witness_json(w: &Witness) -> Value {
    let mut v = map_json(&w.map);
    v["case"] = json!(w.case.tag());
    v["constants"] = Value::Array(w.constants.iter().map(scalar_json).collect());
    v
}

fn degeneracy_json(w: &DegeneracyVariety) -> Value {
    json!({
        "ideal": w.ideal.to_strings(),
        "cone_dimension": w.cone_dimension,
        "codimension": w.codimension,
    })
}

pub fn verdict_json(v: &Verdict) -> Value {
    let mut out = json!({
        "status": v.status.as_str(),
        "theorem": v.basis.tag(),
        "checks": v.checks,
    });
    if let Some(w) = &v.witness {
        out["witness"] = witness_json(w);
    }
    if let Some(k) = v.codim_bound {
        out["codim_bound"] = json!(k);
    }
    if let Some(w) = &v.degeneracy {
        out["degeneracy"] = degeneracy_json(w);
    }
    out
}

fn intersection_point_json(p: &IntersectionPoint) -> Value {
    json!({ "point": point_json(&p.point), "multiplicity": p.multiplicity, "class_size": p.class_size })
}

pub fn settings_for(problem: &ProblemFile) -> Settings {
    let mut s = Settings::default();
    let o = &problem.options;
    if let Some(b) = o.budget {
        s.budget = b;
    }
    if let Some(e) = o.exec {
        s.exec = e;
    }
    if let Some(m) = o.max_ext_degree {
        s.max_ext_degree = m;
    }
    s
}

fn chosen_divisor(problem: &ProblemFile) -> Result<&Divisor, CliError> {
    let system = problem.system()?;
    match &problem.options.divisor {
        None => Ok(&system.divisors()[0]),
        Some(name) => system
            .divisors()
            .iter()
            .find(|d| &d.name == name)
            .ok_or_else(|| CliError::Schema(format!("no divisor named `{name}`"))),
    }
}

fn newton_report(problem: &ProblemFile) -> Result<Value, CliError> {
    let o = &problem.options;
    let pairs = o
        .series
        .as_ref()
        .ok_or_else(|| CliError::Schema("newton needs `coefficients` or `series`".into()))?;
    let precision = o.precision.unwrap_or(DEFAULT_PRECISION);
    let f = TruncatedSeries::from_pairs(pairs, precision, o.tail.clone().unwrap_or(Tail::Zero));
    let poly = newton_polygon(&f)?;
    let vertex = |(i, v): &(usize, nahyp::poly::Rational)| json!([i, format_valuation(v)]);
    let segments: Vec<Value> = poly
        .segments
        .iter()
        .map(|s| {
            json!({
                "start": vertex(&s.start),
                "end": vertex(&s.end),
                "slope": format_valuation(&s.slope),
                "length": s.length,
                "certified": s.certified,
            })
        })
        .collect();
    let report = certify_nonvanishing_implies_constant(&f);
    let mut out = json!({
        "precision": f.precision(),
        "vertices": poly.vertices.iter().map(vertex).collect::<Vec<_>>(),
        "segments": segments,
        "slopes": slope_multiset(&poly).iter().map(format_valuation).collect::<Vec<_>>(),
        "certified": poly.certified,
        "order_at_origin": poly.order_at_origin,
        "nonvanishing": report.status(),
    });
    if let NonvanishingReport::HasZero { valuation } = &report {
        out["zero_valuation"] = match valuation {
            Some(v) => json!(format_valuation(v)),
            None => json!("origin"),
        };
    }
    if let Some(t) = &o.threshold {
        let t = t.as_rational().expect("checked on load");
        out["zeros"] = json!({ "threshold": format_valuation(t), "count": count_zeros(&f, t)? });
    }
    Ok(out)
}

/// Execute `command` (or the file's own command) and build the JSON report.
pub fn run(problem: &ProblemFile, command: Option<Command>) -> Result<Value, CliError> {
    let command = command.or(problem.command).ok_or_else(|| {
        CliError::Schema("no command given in the file or on the command line".into())
    })?;
    let settings = settings_for(problem);
    let body = match command {
        Command::Decide => verdict_json(&decide(problem.system()?, &settings)?),
        Command::Degeneracy => verdict_json(&degeneracy_bound(
            problem.system()?,
            problem.options.ratios.as_deref(),
            &settings,
        )?),
        Command::CheckSmooth => {
            let system = problem.system()?;
            let mut map = serde_json::Map::new();
            let targets: Vec<&Divisor> = match &problem.options.divisor {
                Some(_) => vec![chosen_divisor(problem)?],
                None => system.divisors().iter().collect(),
            };
            for d in targets {
                map.insert(d.name.clone(), json!(check_smooth(&d.poly, &settings)?));
            }
            json!({ "smooth": map })
        }
        Command::CheckTransversal => {
            json!({ "transversal": check_transversal(problem.system()?, &settings)? })
        }
        Command::CheckGeneralPosition => {
            let system = problem.system()?;
            let report = general_position_report(system, &settings)?;
            debug_assert_eq!(report.holds, check_general_position(system, &settings)?);
            let mut out = json!({ "general_position": report.holds });
            if let Some(s) = &report.failing_subset {
                out["failing_subset"] = json!(s
                    .iter()
                    .map(|&i| system.divisors()[i].name.clone())
                    .collect::<Vec<_>>());
            }
            out
        }
        Command::Inflexion => {
            let d = chosen_divisor(problem)?;
            let p = problem
                .options
                .point
                .as_ref()
                .ok_or_else(|| CliError::Schema("inflexion needs `point`".into()))?;
            json!({
                "divisor": d.name,
                "point": point_json(p),
                "maximal_inflexion": is_maximal_inflexion(&d.poly, p)?,
            })
        }
        Command::FindInflexions => {
            let d = chosen_divisor(problem)?;
            let found = find_maximal_inflexions(&d.poly, settings.max_ext_degree, &settings)?;
            json!({
                "divisor": d.name,
                "max_ext_degree": settings.max_ext_degree,
                "count": found.point_count(),
                "points": found.points.iter().map(intersection_point_json).collect::<Vec<_>>(),
                "singular": found.singular.iter().map(point_json).collect::<Vec<_>>(),
                "unresolved": found.unresolved.iter().map(|u| json!({
                    "factor": u.factor,
                    "degree": u.degree,
                    "multiplicity": u.multiplicity,
                })).collect::<Vec<_>>(),
            })
        }
        Command::Witness => {
            let v = decide(problem.system()?, &settings)?;
            match &v.witness {
                Some(w) => {
                    json!({ "status": v.status.as_str(), "theorem": v.basis.tag(), "witness": witness_json(w) })
                }
                None => {
                    return Err(CliError::Core(nahyp::Error::CaseUnsupported(format!(
                        "no witness: the configuration is {}",
                        v.status
                    ))))
                }
            }
        }
        Command::Verify => {
            let f = problem
                .options
                .witness
                .as_ref()
                .ok_or_else(|| CliError::Schema("verify needs `witness`".into()))?;
            let report = verify_witness(problem.system()?, f)?;
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "result": c.passed, "detail": c.detail }))
                .collect();
            let mut out = map_json(f);
            out["passed"] = json!(report.passed());
            out["checks"] = Value::Array(checks);
            out["compositions"] = json!(report
                .compositions
                .iter()
                .map(|c| c.to_string_in("z"))
                .collect::<Vec<_>>());
            out
        }
        Command::Newton => newton_report(problem)?,
    };
    let mut out = json!({ "command": command.as_str() });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    Ok(out)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}
