//! Explicit nonconstant polynomial maps into complements of plane curve
//! pairs and of the quadric family, and their independent verification.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::plane::{
    intersect_curves, is_maximal_inflexion, line_intersection_points, tangent_line, LineForm,
    ProjectivePoint,
};
use crate::poly::{
    compose_with_map, invert, LinearChange, Monomial, MultiPoly, PolynomialMap, Scalar, UniPoly,
};
use crate::position::DivisorSystem;

/// Which construction produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    /// Two lines: a third line through their common point.
    TwoLines,
    /// A line tangent to a conic: a conic osculating at the contact point.
    LineTangentToConic,
    /// A line meeting a conic twice: the conic's tangent at one of the points.
    LineMeetingConicTwice,
    /// Two conics with a single common point: their common tangent.
    TangentialConics,
    /// A line through a maximal inflexion point: the tangent there.
    LineThroughMaximalInflexion,
    /// `X0` and the diagonal quadrics with zero row sums.
    QuadricFamily,
}

impl WitnessCase {
    pub fn tag(self) -> &'static str {
        match self {
            WitnessCase::TwoLines => "two_lines",
            WitnessCase::LineTangentToConic => "line_tangent_to_conic",
            WitnessCase::LineMeetingConicTwice => "line_meeting_conic_twice",
            WitnessCase::TangentialConics => "tangential_conics",
            WitnessCase::LineThroughMaximalInflexion => "line_through_maximal_inflexion",
            WitnessCase::QuadricFamily => "quadric_family",
        }
    }
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A verified map together with the constants `D_i ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub map: PolynomialMap,
    pub case: WitnessCase,
    pub constants: Vec<Scalar>,
}

/// `z ↦ a + z p` for the first spanning point `a` of the line not
/// proportional to `p`; the image is the line minus `p`.
pub fn line_omitting_point(line: &LineForm, p: &ProjectivePoint) -> Result<PolynomialMap> {
    if !line.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let (a, b) = line.basis();
    let a = if ProjectivePoint::new(a.to_vec())? != *p {
        a
    } else {
        b
    };
    PolynomialMap::affine_line(a, p.coords())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub compositions: Vec<UniPoly>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// First failing check.
    pub fn failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// The constants `D_i ∘ f` when every composition is constant.
    pub fn constants(&self) -> Option<Vec<Scalar>> {
        self.compositions
            .iter()
            .map(|c| c.is_constant().then(|| c.coeff(0)))
            .collect()
    }
}

/// Checks that `f` has coprime components, is nonconstant as a projective
/// map, and that every `D_i ∘ f` is a nonzero constant.
pub fn verify_witness(system: &DivisorSystem, f: &PolynomialMap) -> Result<VerificationReport> {
    if f.arity() != system.dim() + 1 {
        return Err(Error::ArityMismatch {
            expected: system.dim() + 1,
            found: f.arity(),
        });
    }
    let mut checks = Vec::new();
    let gcd = f.component_gcd();
    checks.push(CheckResult {
        name: "reduced".into(),
        passed: gcd.degree() == Some(0),
        detail: format!("gcd of components = {}", gcd.to_string_in("z")),
    });
    let pair = f.nonconstant_witness_pair();
    checks.push(CheckResult {
        name: "nonconstant".into(),
        passed: pair.is_some(),
        detail: match pair {
            Some((i, j)) => format!("f{i} f{j}' - f{j} f{i}' is nonzero"),
            None => "all components are proportional".into(),
        },
    });
    let mut compositions = Vec::new();
    for d in system.divisors() {
        let c = compose_with_map(&d.poly, f)?;
        checks.push(CheckResult {
            name: format!("composition {}", d.name),
            passed: c.degree() == Some(0),
            detail: format!("{} o f = {}", d.name, c.to_string_in("z")),
        });
        compositions.push(c);
    }
    Ok(VerificationReport {
        checks,
        compositions,
    })
}

fn finish(system: &DivisorSystem, map: PolynomialMap, case: WitnessCase) -> Result<Witness> {
    let report = verify_witness(system, &map)?;
    match (report.passed(), report.constants()) {
        (true, Some(constants)) => Ok(Witness {
            map,
            case,
            constants,
        }),
        _ => Err(Error::CaseUnsupported(format!(
            "{case} construction failed verification: {}",
            report.failure().map_or(String::new(), |c| c.detail.clone())
        ))),
    }
}

fn degree(p: &MultiPoly) -> usize {
    p.total_degree().unwrap_or(0) as usize
}

fn cross(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    vec![
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Build the witness for a plane pair under the construction `case`.
pub fn synthesize(d1: &MultiPoly, d2: &MultiPoly, case: WitnessCase) -> Result<Witness> {
    let system = DivisorSystem::from_polys(2, vec![d1.clone(), d2.clone()])?;
    let degrees = (degree(d1), degree(d2));
    let expect = |want: (usize, usize)| -> Result<()> {
        if degrees == want {
            Ok(())
        } else {
            Err(Error::CaseUnsupported(format!(
                "{case} needs degrees {want:?}, got {degrees:?}"
            )))
        }
    };
    let map = match case {
        WitnessCase::TwoLines => {
            expect((1, 1))?;
            let l1 = LineForm::from_poly(d1)?;
            let l2 = LineForm::from_poly(d2)?;
            if l1 == l2 {
                return Err(Error::CaseUnsupported("the two lines coincide".into()));
            }
            let p = ProjectivePoint::new(cross(l1.coeffs(), l2.coeffs()))?;
            line_omitting_point(&LineForm::from_poly(&(d1 - d2))?, &p)?
        }
        WitnessCase::LineTangentToConic => {
            expect((1, 2))?;
            tangent_conic_map(d1, d2)?
        }
        WitnessCase::LineMeetingConicTwice => {
            expect((1, 2))?;
            let pts = line_intersection_points(&LineForm::from_poly(d1)?, d2)?;
            if pts.iter().any(|p| p.multiplicity > 1) {
                return Err(Error::CaseUnsupported(
                    "the line is tangent to the conic".into(),
                ));
            }
            let q = &pts[0].point;
            line_omitting_point(&tangent_line(d2, q)?, q)?
        }
        WitnessCase::TangentialConics => {
            expect((2, 2))?;
            let meet = intersect_curves(d1, d2, 2)?;
            let single = match meet.points.as_slice() {
                [only]
                    if meet.unresolved.is_empty()
                        && only.class_size == 1
                        && only.multiplicity == 4 =>
                {
                    only
                }
                _ => {
                    return Err(Error::CaseUnsupported(
                        "the conics do not meet in a single point".into(),
                    ))
                }
            };
            let p = &single.point;
            let t1 = tangent_line(d1, p)?;
            if t1 != tangent_line(d2, p)? {
                return Err(Error::CaseUnsupported(
                    "the conics have distinct tangents at their common point".into(),
                ));
            }
            line_omitting_point(&t1, p)?
        }
        WitnessCase::LineThroughMaximalInflexion => {
            if degrees.0 != 1 || degrees.1 < 3 {
                return Err(Error::CaseUnsupported(format!(
                    "{case} needs a line and a curve of degree at least 3"
                )));
            }
            let pts = line_intersection_points(&LineForm::from_poly(d1)?, d2)?;
            let mut chosen = None;
            for q in pts {
                // singular points are never inflexions
                let maximal = match is_maximal_inflexion(d2, &q.point) {
                    Err(Error::SingularPoint) => false,
                    other => other?,
                };
                if maximal {
                    chosen = Some(q.point);
                    break;
                }
            }
            let p = chosen.ok_or_else(|| {
                Error::CaseUnsupported("the line passes through no maximal inflexion point".into())
            })?;
            line_omitting_point(&tangent_line(d2, &p)?, &p)?
        }
        WitnessCase::QuadricFamily => {
            return Err(Error::CaseUnsupported(
                "use witness_remark_quadrics for the quadric family".into(),
            ))
        }
    };
    finish(&system, map, case)
}

/// Conic through the contact point tangent to the line there, missing both curves.
fn tangent_conic_map(d1: &MultiPoly, d2: &MultiPoly) -> Result<PolynomialMap> {
    let line = LineForm::from_poly(d1)?;
    let pts = line_intersection_points(&line, d2)?;
    let p = match pts.as_slice() {
        [only] if only.multiplicity == 2 => only.point.clone(),
        _ => {
            return Err(Error::CaseUnsupported(
                "the line is not tangent to the conic".into(),
            ))
        }
    };
    // New coordinates Y = M X with Y0 = ℓ·X and p ↦ (0 : 0 : 1).
    let through_p = LineForm::new(p.coords().to_vec())?;
    let (k1, k2) = through_p.basis();
    let ell = ProjectivePoint::new(line.coeffs().to_vec())?;
    let r1 = if ProjectivePoint::new(k1.to_vec())? != ell {
        k1
    } else {
        k2
    };
    let j = p.coords().iter().position(|c| !c.is_zero()).unwrap();
    let mut r2 = vec![Scalar::zero(); 3];
    r2[j] = p.coords()[j].inv();
    let m = vec![line.coeffs().to_vec(), r1.to_vec(), r2];
    let to_y = LinearChange::new(invert(&m).ok_or(Error::SingularMatrix)?)?;
    let conic = to_y.apply(d2)?;
    let c = |e: [u32; 3]| conic.coeff(&Monomial::new(e.to_vec()));
    let (a0, a1, a2, a3) = (c([2, 0, 0]), c([0, 2, 0]), c([1, 1, 0]), c([1, 0, 1]));
    if a1.is_zero() || a3.is_zero() {
        return Err(Error::NotSmooth { name: "D2".into() });
    }
    let inv = a3.inv();
    let (a0, a1, a2) = (&a0 * &inv, &a1 * &inv, &a2 * &inv);
    let normal = PolynomialMap::new(vec![
        UniPoly::constant(Scalar::one()),
        UniPoly::var(),
        UniPoly::new(vec![&Scalar::one() - &a0, -a2, -a1]),
    ])?;
    to_y.inverse().apply_to_map(&normal)
}

/// Coefficients `a_{r j}` (rows `r = 1..n-1`, columns `j = 1..n`) with zero
/// row sums and every maximal minor nonzero: a Vandermonde block in the first
/// `n - 1` columns completed by minus the row sum.
fn quadric_coefficients(n: usize) -> Vec<Vec<Scalar>> {
    (1..n)
        .map(|r| {
            let mut row: Vec<Scalar> = (1..n)
                .map(|j| Scalar::from_int(j as i64).pow(r as u32 - 1))
                .collect();
            let sum: Scalar = row.iter().cloned().sum();
            row.push(-sum);
            row
        })
        .collect()
}

fn all_maximal_minors_nonzero(a: &[Vec<Scalar>]) -> bool {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).all(|skip| {
        let sub: Vec<Vec<Scalar>> = a
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        !crate::poly::scalar_determinant(sub).is_zero()
    })
}

/// `D1 = X0` and `D_i = X0^2 + Σ a_{ij} X_j^2` with zero row sums, plus the
/// map `(1, z, …, z)`.
pub fn witness_remark_quadrics(n: usize) -> Result<(DivisorSystem, Witness)> {
    if n < 2 {
        return Err(Error::InvalidInput(
            "the quadric family needs n >= 2".into(),
        ));
    }
    let a = quadric_coefficients(n);
    if !all_maximal_minors_nonzero(&a) {
        return Err(Error::CaseUnsupported(
            "coefficient matrix has a singular maximal minor".into(),
        ));
    }
    let nv = n + 1;
    let x0 = MultiPoly::var(nv, 0);
    let mut polys = vec![x0.clone()];
    for row in &a {
        let mut q = x0.pow(2);
        for (j, c) in row.iter().enumerate() {
            q = &q + &MultiPoly::var(nv, j + 1).pow(2).scale(c);
        }
        polys.push(q);
    }
    let system = DivisorSystem::from_polys(n, polys)?;
    let mut comps = vec![UniPoly::constant(Scalar::one())];
    comps.extend((0..n).map(|_| UniPoly::var()));
    let witness = finish(
        &system,
        PolynomialMap::new(comps)?,
        WitnessCase::QuadricFamily,
    )?;
    Ok((system, witness))
}
