//! Hyperbolicity verdicts for complements of hypersurface configurations.
//!
//! Every verdict states which result it rests on and lists the hypotheses it
//! checked. Configurations outside all of them get `Unknown`.

use std::fmt;

use serde::Serialize;

use crate::elimination::{degeneracy_variety, projective_points, DegeneracyVariety};
use crate::error::{Error, Result};
use crate::par;
use crate::plane::{is_maximal_inflexion, line_intersection_points, LineForm, ProjectivePoint};
use crate::poly::{equalize_degrees, kernel_basis, PolynomialMap, Scalar};
use crate::position::{
    check_smooth, check_transversal, general_position_report, Divisor, DivisorSystem,
};
use crate::witness::{synthesize, verify_witness, Witness, WitnessCase};
use crate::Settings;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Hyperbolic,
    NotHyperbolic,
    DegeneracyBound,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Hyperbolic => "HYPERBOLIC",
            Status::NotHyperbolic => "NOT_HYPERBOLIC",
            Status::DegeneracyBound => "DEGENERACY_BOUND",
            Status::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The result a verdict rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `q` hypersurfaces in general position: degeneracy in codimension `min(n+1, q) - 1`.
    GeneralPositionDegeneracy,
    /// `n` smooth transversal hypersurfaces of degree at least 2.
    TransversalHypersurfaces,
    /// Two transversal plane curves, including the maximal inflexion criterion.
    PlaneCurvePairs,
    /// Explicit maps for lines and conics.
    LowDegreePlanePairs,
    /// A hyperplane and quadrics sharing a point where a line avoids them all.
    QuadricFamily,
    /// No result applies.
    None,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::GeneralPositionDegeneracy => "general_position_degeneracy",
            Basis::TransversalHypersurfaces => "transversal_hypersurfaces",
            Basis::PlaneCurvePairs => "plane_curve_pairs",
            Basis::LowDegreePlanePairs => "low_degree_plane_pairs",
            Basis::QuadricFamily => "quadric_family",
            Basis::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub result: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, result: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            result,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub basis: Basis,
    pub checks: Vec<Check>,
    /// Present exactly when the status is `NotHyperbolic`.
    pub witness: Option<Witness>,
    /// Present exactly when the status is `DegeneracyBound`.
    pub codim_bound: Option<usize>,
    /// Computed on request for `DegeneracyBound`.
    pub degeneracy: Option<DegeneracyVariety>,
}

impl Verdict {
    fn new(status: Status, basis: Basis, checks: Vec<Check>) -> Verdict {
        Verdict {
            status,
            basis,
            checks,
            witness: None,
            codim_bound: None,
            degeneracy: None,
        }
    }

    fn unknown(checks: Vec<Check>) -> Verdict {
        debug_assert!(checks.iter().any(|c| !c.result));
        Verdict::new(Status::Unknown, Basis::None, checks)
    }

    /// First check that did not hold.
    pub fn failed_hypothesis(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.result)
    }
}

fn names(system: &DivisorSystem, idx: &[usize]) -> String {
    idx.iter()
        .map(|&i| system.divisors()[i].name.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Route a configuration to the result covering its shape.
pub fn decide(system: &DivisorSystem, settings: &Settings) -> Result<Verdict> {
    let (n, q) = (system.dim(), system.len());
    if n == 2 && q == 2 {
        decide_p2_two_curves(system, settings)
    } else if q == n {
        decide_theorem3(system, settings)
    } else {
        degeneracy_bound(system, None, settings)
    }
}

/// General position gives degeneracy of every map omitting the divisors,
/// and hyperbolicity once `q ≥ n + 1`. With `ratios` the variety
/// `{P_i = c_i P_1}` of the degree-equalized forms is computed as well.
pub fn degeneracy_bound(
    system: &DivisorSystem,
    ratios: Option<&[Scalar]>,
    settings: &Settings,
) -> Result<Verdict> {
    let (n, q) = (system.dim(), system.len());
    let mut checks = vec![Check::new(
        "at least two divisors",
        q >= 2,
        format!("q = {q}"),
    )];
    if q < 2 {
        return Ok(Verdict::unknown(checks));
    }
    let equalized = equalize_degrees(&system.polys())?;
    let common = equalized[0].total_degree().unwrap_or(0);
    checks.push(Check::new(
        "equal degrees",
        true,
        format!("powers of common degree {common}"),
    ));
    let divisors = system
        .divisors()
        .iter()
        .zip(&equalized)
        .map(|(d, p)| Divisor {
            name: d.name.clone(),
            poly: p.clone(),
        })
        .collect();
    let equal = DivisorSystem::new(n, divisors)?;
    let report = general_position_report(&equal, settings)?;
    let detail = match &report.failing_subset {
        None => "every component of every intersection has the expected codimension".to_string(),
        Some(s) if q <= n => format!("{} do not intersect properly", names(system, s)),
        Some(s) => format!("{} have a common point", names(system, s)),
    };
    checks.push(Check::new("general position", report.holds, detail));
    if !report.holds {
        return Ok(Verdict::unknown(checks));
    }
    if q > n {
        return Ok(Verdict::new(
            Status::Hyperbolic,
            Basis::GeneralPositionDegeneracy,
            checks,
        ));
    }
    let k = q - 1;
    let mut verdict = Verdict::new(
        Status::DegeneracyBound,
        Basis::GeneralPositionDegeneracy,
        checks,
    );
    verdict.codim_bound = Some(k);
    if let Some(c) = ratios {
        let w = degeneracy_variety(&equalized, c, None, settings.budget)?;
        verdict.checks.push(Check::new(
            "degeneracy variety codimension",
            w.codimension == k as i64,
            format!("codimension {} for bound {k}", w.codimension),
        ));
        verdict.degeneracy = Some(w);
    }
    Ok(verdict)
}

fn smoothness_checks(system: &DivisorSystem, settings: &Settings) -> Result<Vec<Check>> {
    let flags = par::map(settings.exec, system.divisors(), |d| {
        check_smooth(&d.poly, settings)
    });
    system
        .divisors()
        .iter()
        .zip(flags)
        .map(|(d, s)| {
            let s = s?;
            let detail = if s {
                "no singular points"
            } else {
                "has a singular point"
            };
            Ok(Check::new(format!("{} smooth", d.name), s, detail))
        })
        .collect()
}

fn transversality_check(system: &DivisorSystem, settings: &Settings) -> Result<Check> {
    let t = check_transversal(system, settings)?;
    let detail = if t {
        "the Jacobian has full rank at every common point".to_string()
    } else {
        format!(
            "{} meet non-transversally",
            names(system, &(0..system.len()).collect::<Vec<_>>())
        )
    };
    Ok(Check::new("transversal", t, detail))
}

fn degree_check(system: &DivisorSystem) -> Check {
    let low: Vec<usize> = (0..system.len())
        .filter(|&i| system.degrees()[i] < 2)
        .collect();
    let detail = if low.is_empty() {
        "every divisor has degree at least 2".to_string()
    } else {
        format!("{} of degree 1", names(system, &low))
    };
    Check::new("degrees at least 2", low.is_empty(), detail)
}

/// `n` smooth transversal hypersurfaces in projective `n`-space.
pub fn decide_theorem3(system: &DivisorSystem, settings: &Settings) -> Result<Verdict> {
    let n = system.dim();
    if system.len() != n {
        return Err(Error::InvalidInput(format!(
            "expected {n} divisors, got {}",
            system.len()
        )));
    }
    if n == 2 {
        return decide_p2_two_curves(system, settings);
    }
    let mut checks = smoothness_checks(system, settings)?;
    if checks.iter().any(|c| !c.result) {
        return Ok(Verdict::unknown(checks));
    }
    checks.push(transversality_check(system, settings)?);
    if !checks.last().unwrap().result {
        return Ok(Verdict::unknown(checks));
    }
    checks.push(degree_check(system));
    if checks.last().unwrap().result {
        return Ok(Verdict::new(
            Status::Hyperbolic,
            Basis::TransversalHypersurfaces,
            checks,
        ));
    }
    if system.degrees().iter().all(|&d| d <= 2) {
        if let Some(w) = line_witness_search(system, settings)? {
            checks.push(Check::new(
                "line avoiding every divisor",
                true,
                format!("f = {}", map_string(&w.map)),
            ));
            return not_hyperbolic(system, Basis::QuadricFamily, checks, w);
        }
        checks.push(Check::new(
            "line avoiding every divisor",
            false,
            "no common point carries such a line",
        ));
    }
    Ok(Verdict::unknown(checks))
}

fn map_string(f: &PolynomialMap) -> String {
    format!("({})", f.to_strings().join(", "))
}

fn point_key(p: &[Scalar]) -> (bool, usize, String) {
    let rational = p.iter().all(|c| c.as_rational().is_some());
    let negative = p.iter().filter(|c| c.is_negative_rational()).count();
    (!rational, negative, format!("{p:?}"))
}

/// Lines `z ↦ a + z p` through a common point `p` of hyperplanes and quadrics.
/// Each quadric restricted to such a line is `Q(a) + 2 z B(a, p)`, so it is
/// constant exactly when `a` lies in the kernel of the gradients at `p`.
fn line_witness_search(system: &DivisorSystem, settings: &Settings) -> Result<Option<Witness>> {
    let nv = system.dim() + 1;
    let found = match projective_points(&system.polys(), settings.max_ext_degree, settings.budget) {
        Ok(Some(found)) => found,
        Ok(None) | Err(Error::InvalidInput(_)) | Err(Error::UnsupportedTower(_)) => {
            return Ok(None)
        }
        Err(e) => return Err(e),
    };
    let mut points: Vec<Vec<Scalar>> = found.points.into_iter().map(|(p, _)| p).collect();
    points.sort_by_key(|p| point_key(p));
    for p in points {
        let pp = ProjectivePoint::new(p.clone())?;
        let rows = system
            .divisors()
            .iter()
            .filter(|d| d.poly.total_degree() == Some(2))
            .map(|d| {
                d.poly
                    .gradient()
                    .iter()
                    .map(|g| g.evaluate(&p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let kernel = kernel_basis(&rows, nv);
        let mut candidates = kernel.clone();
        for (i, a) in kernel.iter().enumerate() {
            for b in &kernel[i + 1..] {
                candidates.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
                candidates.push(a.iter().zip(b).map(|(x, y)| x - y).collect());
            }
        }
        for a in candidates {
            if a.iter().all(Scalar::is_zero) || ProjectivePoint::new(a.clone())? == pp {
                continue;
            }
            let map = PolynomialMap::affine_line(&a, &p)?;
            let report = verify_witness(system, &map)?;
            if let (true, Some(constants)) = (report.passed(), report.constants()) {
                return Ok(Some(Witness {
                    map,
                    case: WitnessCase::QuadricFamily,
                    constants,
                }));
            }
        }
    }
    Ok(None)
}

/// Attach a witness after checking it against the configuration as given.
fn not_hyperbolic(
    system: &DivisorSystem,
    basis: Basis,
    mut checks: Vec<Check>,
    mut w: Witness,
) -> Result<Verdict> {
    let report = verify_witness(system, &w.map)?;
    match (report.passed(), report.constants()) {
        (true, Some(constants)) => {
            let values: Vec<String> = constants.iter().map(|c| c.to_string()).collect();
            checks.push(Check::new(
                "witness verified",
                true,
                format!("compositions are constants {}", values.join(", ")),
            ));
            w.constants = constants;
            let mut v = Verdict::new(Status::NotHyperbolic, basis, checks);
            v.witness = Some(w);
            Ok(v)
        }
        _ => {
            let why = report.failure().map_or_else(
                || "composition not constant".to_string(),
                |c| c.detail.clone(),
            );
            checks.push(Check::new("witness verified", false, why));
            Ok(Verdict::unknown(checks))
        }
    }
}

/// Two smooth plane curves, sorted so the first has the smaller degree.
pub fn decide_p2_two_curves(system: &DivisorSystem, settings: &Settings) -> Result<Verdict> {
    if system.dim() != 2 || system.len() != 2 {
        return Err(Error::InvalidInput(
            "expected two curves in the projective plane".into(),
        ));
    }
    let mut checks = smoothness_checks(system, settings)?;
    if checks.iter().any(|c| !c.result) {
        return Ok(Verdict::unknown(checks));
    }
    let mut order = [0usize, 1];
    order.sort_by_key(|&i| system.degrees()[i]);
    let (d1, d2) = (
        &system.divisors()[order[0]].poly,
        &system.divisors()[order[1]].poly,
    );
    let degrees = (system.degrees()[order[0]], system.degrees()[order[1]]);
    let transversal = transversality_check(system, settings)?;
    let is_transversal = transversal.result;
    checks.push(transversal);

    if !is_transversal {
        let case = match degrees {
            (2, 2) => WitnessCase::TangentialConics,
            (1, 2) => WitnessCase::LineTangentToConic,
            _ => return Ok(Verdict::unknown(checks)),
        };
        return match synthesize(d1, d2, case) {
            Ok(w) => {
                checks.push(Check::new("tangential low-degree pair", true, case.tag()));
                not_hyperbolic(system, Basis::LowDegreePlanePairs, checks, w)
            }
            Err(Error::CaseUnsupported(why)) => {
                checks.push(Check::new("tangential low-degree pair", false, why));
                Ok(Verdict::unknown(checks))
            }
            Err(e) => Err(e),
        };
    }
    match degrees {
        (a, _) if a >= 2 => {
            checks.push(degree_check(system));
            Ok(Verdict::new(
                Status::Hyperbolic,
                Basis::PlaneCurvePairs,
                checks,
            ))
        }
        (1, 1) | (1, 2) => {
            let case = if degrees.1 == 1 {
                WitnessCase::TwoLines
            } else {
                WitnessCase::LineMeetingConicTwice
            };
            let w = synthesize(d1, d2, case)?;
            checks.push(Check::new(
                "line and curve of degree at most 2",
                true,
                case.tag(),
            ));
            not_hyperbolic(system, Basis::LowDegreePlanePairs, checks, w)
        }
        _ => line_and_curve(system, order, checks, settings),
    }
}

/// A line and a curve of degree at least 3 meeting transversally: the
/// complement is hyperbolic unless the line passes through a maximal inflexion.
fn line_and_curve(
    system: &DivisorSystem,
    order: [usize; 2],
    mut checks: Vec<Check>,
    settings: &Settings,
) -> Result<Verdict> {
    let (line, curve) = (&system.divisors()[order[0]], &system.divisors()[order[1]]);
    let pts = match line_intersection_points(&LineForm::from_poly(&line.poly)?, &curve.poly) {
        Ok(p) => p,
        Err(Error::UnsupportedTower(why)) => {
            checks.push(Check::new("intersection points computed", false, why));
            return Ok(Verdict::unknown(checks));
        }
        Err(e) => return Err(e),
    };
    let tests = par::map(settings.exec, &pts, |p| {
        is_maximal_inflexion(&curve.poly, &p.point)
    });
    let mut any = false;
    for (p, t) in pts.iter().zip(tests) {
        let maximal = match t {
            Ok(m) => m,
            Err(Error::UnsupportedTower(why)) => {
                checks.push(Check::new(
                    format!("not a maximal inflexion: {}", p.point),
                    false,
                    why,
                ));
                return Ok(Verdict::unknown(checks));
            }
            Err(e) => return Err(e),
        };
        any |= maximal;
        let field = match p.point.field() {
            Some(k) => format!(
                "over Q[u]/({}), {} conjugates",
                k.minpoly_string(),
                p.class_size
            ),
            None => "rational".to_string(),
        };
        let detail = format!(
            "{field}; tangent meets {} with multiplicity {} there",
            curve.name,
            if maximal {
                "equal to its degree"
            } else {
                "below its degree"
            }
        );
        checks.push(Check::new(
            format!("not a maximal inflexion: {}", p.point),
            !maximal,
            detail,
        ));
    }
    if !any {
        return Ok(Verdict::new(
            Status::Hyperbolic,
            Basis::PlaneCurvePairs,
            checks,
        ));
    }
    let w = synthesize(
        &line.poly,
        &curve.poly,
        WitnessCase::LineThroughMaximalInflexion,
    )?;
    // the inflexion entries describe the certificate, not failed hypotheses
    for c in checks
        .iter_mut()
        .filter(|c| c.name.starts_with("not a maximal inflexion"))
    {
        if !c.result {
            c.name = c
                .name
                .replacen("not a maximal inflexion", "maximal inflexion", 1);
            c.result = true;
        }
    }
    not_hyperbolic(system, Basis::PlaneCurvePairs, checks, w)
}

/// One-line description: the status and its basis, or the failed hypothesis.
pub fn summary(v: &Verdict) -> String {
    match v.failed_hypothesis() {
        Some(c) if v.status == Status::Unknown => {
            format!("{}: {} ({})", v.status, c.name, c.detail)
        }
        _ => format!("{} [{}]", v.status, v.basis.tag()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly_default;
    use crate::witness::witness_remark_quadrics;

    fn sys(n: usize, polys: &[&str]) -> DivisorSystem {
        DivisorSystem::from_polys(
            n,
            polys
                .iter()
                .map(|s| parse_poly_default(s, n + 1).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn run(n: usize, polys: &[&str]) -> Verdict {
        decide(&sys(n, polys), &Settings::default()).unwrap()
    }

    fn witness_strings(v: &Verdict) -> Vec<String> {
        v.witness.as_ref().unwrap().map.to_strings()
    }

    #[test]
    fn coordinate_triangle_is_hyperbolic() {
        let v = run(2, &["X0", "X1", "X2"]);
        assert_eq!(v.status, Status::Hyperbolic);
        assert_eq!(v.basis, Basis::GeneralPositionDegeneracy);
    }

    #[test]
    fn two_hyperplanes_give_bound() {
        let s = sys(2, &["X1", "X2"]);
        let v = degeneracy_bound(&s, Some(&[Scalar::one()]), &Settings::default()).unwrap();
        assert_eq!(v.status, Status::DegeneracyBound);
        assert_eq!(v.codim_bound, Some(1));
        assert_eq!(v.degeneracy.unwrap().codimension, 1);
    }

    #[test]
    fn concurrent_lines_are_unknown() {
        let v = run(2, &["X0", "X0 + X1", "X1", "X0 - X1"]);
        assert_eq!(v.status, Status::Unknown);
        let failed = v.failed_hypothesis().unwrap();
        assert_eq!(failed.name, "general position");
        assert!(failed.detail.contains("D1, D2, D3"), "{}", failed.detail);
    }

    #[test]
    fn single_divisor_is_unknown() {
        let v = run(3, &["X0"]);
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(v.failed_hypothesis().unwrap().name, "at least two divisors");
    }

    #[test]
    fn transversal_conics() {
        let v = run(2, &["X0^2 + X1^2 - X2^2", "X0*X1 - X2^2"]);
        assert_eq!(v.status, Status::Hyperbolic);
        assert_eq!(v.basis, Basis::PlaneCurvePairs);
    }

    #[test]
    fn two_lines() {
        let v = run(2, &["X0", "X1"]);
        assert_eq!(v.status, Status::NotHyperbolic);
        assert_eq!(witness_strings(&v), ["1", "1", "z"]);
    }

    #[test]
    fn line_and_conic() {
        let v = run(2, &["X0", "X0^2 + X1^2 - X2^2"]);
        assert_eq!(v.status, Status::NotHyperbolic);
        assert_eq!(witness_strings(&v), ["1", "z", "z"]);
        let v = run(2, &["X0", "X0*X2 - X1^2"]);
        assert_eq!(v.status, Status::NotHyperbolic);
        assert_eq!(v.witness.unwrap().case, WitnessCase::LineTangentToConic);
    }

    #[test]
    fn quadric_family_three() {
        let (s, _) = witness_remark_quadrics(3).unwrap();
        let v = decide(&s, &Settings::default()).unwrap();
        assert_eq!(v.status, Status::NotHyperbolic);
        assert_eq!(v.basis, Basis::QuadricFamily);
        assert_eq!(witness_strings(&v), ["1", "z", "z", "z"]);
        assert!(v.witness.unwrap().constants.iter().all(Scalar::is_one));
    }

    #[test]
    fn line_through_fermat_inflexion() {
        let v = run(2, &["X0 + X1 + X2", "X0^3 + X1^3 + X2^3"]);
        assert_eq!(v.status, Status::NotHyperbolic);
        assert_eq!(witness_strings(&v), ["z", "-z", "1"]);
    }

    #[test]
    fn line_missing_quartic_inflexions() {
        let v = run(2, &["X0 - 3*X2", "X0^4 + X1^4 + X2^4"]);
        assert_eq!(v.status, Status::Hyperbolic);
        assert!(v
            .checks
            .iter()
            .any(|c| c.name.starts_with("not a maximal inflexion")));
    }

    #[test]
    fn conic_tangent_to_cubic_is_unknown() {
        // the conic X0*X2 - X1^2 and the cubic share the tangent X0 = 0 at (0:0:1)
        let v = run(2, &["X0*X2 - X1^2", "X0*X2^2 - X1^3 + X0^3"]);
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(v.failed_hypothesis().unwrap().name, "transversal");
    }

    #[test]
    fn theorem_needs_n_divisors() {
        assert!(decide_theorem3(&sys(3, &["X0", "X1"]), &Settings::default()).is_err());
    }
}
