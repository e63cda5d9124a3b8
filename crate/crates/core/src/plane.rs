//! Plane curves: points, lines, restriction to lines, intersection
//! multiplicities and maximal inflexion points.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::par;
use crate::poly::{
    factor_over_q, hessian_det, mat_vec, root_of_irreducible, LinearChange, MultiPoly, NumberField,
    Scalar, UniPoly,
};
use crate::Settings;

/// A point of projective space, scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Scalar>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Scalar>) -> Result<ProjectivePoint> {
        Scalar::common_field(coords.iter())?;
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| {
                Error::InvalidInput("all coordinates of a projective point are zero".into())
            })?
            .inv();
        Ok(ProjectivePoint {
            coords: coords.iter().map(|c| c * &lead).collect(),
        })
    }

    pub fn from_ints(coords: &[i64]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn field(&self) -> Option<Arc<NumberField>> {
        Scalar::common_field(self.coords.iter()).expect("checked on construction")
    }

    pub fn is_rational(&self) -> bool {
        self.field().is_none()
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    /// Image under the point action of `change`, so that `change.apply(D)`
    /// vanishes at the image iff `D` vanishes here.
    pub fn transformed(&self, change: &LinearChange) -> ProjectivePoint {
        ProjectivePoint::new(change.apply_to_point(&self.coords)).expect("invertible change")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coord_strings().join(" : "))
    }
}

/// A line `ℓ · X = 0` in the plane with the parametrization `s a + t b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineForm {
    coeffs: Vec<Scalar>,
    a: Vec<Scalar>,
    b: Vec<Scalar>,
}

impl LineForm {
    /// Coefficients are scaled to make the first nonzero one equal to 1. The
    /// parametrization uses the kernel vectors `e_j - (ℓ_j/ℓ_k) e_k` for the
    /// free indices `j` in increasing order, each scaled the same way.
    pub fn new(coeffs: Vec<Scalar>) -> Result<LineForm> {
        if coeffs.len() != 3 {
            return Err(Error::ArityMismatch {
                expected: 3,
                found: coeffs.len(),
            });
        }
        Scalar::common_field(coeffs.iter())?;
        let k = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidInput("zero linear form".into()))?;
        let inv = coeffs[k].inv();
        let coeffs: Vec<Scalar> = coeffs.iter().map(|c| c * &inv).collect();
        let mut kernel = (0..3).filter(|&j| j != k).map(|j| {
            let mut v = vec![Scalar::zero(); 3];
            v[j] = Scalar::one();
            v[k] = -&coeffs[j];
            ProjectivePoint::new(v).expect("nonzero").coords
        });
        let a = kernel.next().unwrap();
        let b = kernel.next().unwrap();
        Ok(LineForm { coeffs, a, b })
    }

    pub fn from_poly(p: &MultiPoly) -> Result<LineForm> {
        if p.nvars() != 3 || p.homogeneous_degree() != Some(1) {
            return Err(Error::InvalidInput(format!(
                "`{p}` is not a linear form in three variables"
            )));
        }
        LineForm::new(
            (0..3)
                .map(|i| p.coeff(&crate::poly::Monomial::var(3, i)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::linear(&self.coeffs)
    }

    /// The two spanning points `(a, b)` of the parametrization.
    pub fn basis(&self) -> (&[Scalar], &[Scalar]) {
        (&self.a, &self.b)
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.coeffs
            .iter()
            .zip(p.coords())
            .map(|(x, y)| x * y)
            .sum::<Scalar>()
            .is_zero()
    }

    pub fn point_at(&self, s: &Scalar, t: &Scalar) -> Vec<Scalar> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(x, y)| &(x * s) + &(y * t))
            .collect()
    }

    /// Parameter `(s : t)` of a point on the line.
    pub fn parameter_of(&self, p: &ProjectivePoint) -> Result<(Scalar, Scalar)> {
        if !self.contains(p) {
            return Err(Error::NotOnCurve);
        }
        let x = p.coords();
        for i in 0..3 {
            for j in i + 1..3 {
                let det = &(&self.a[i] * &self.b[j]) - &(&self.a[j] * &self.b[i]);
                if det.is_zero() {
                    continue;
                }
                let inv = det.inv();
                let s = &(&(&x[i] * &self.b[j]) - &(&x[j] * &self.b[i])) * &inv;
                let t = &(&(&self.a[i] * &x[j]) - &(&self.a[j] * &x[i])) * &inv;
                return Ok((s, t));
            }
        }
        unreachable!("spanning points are independent")
    }
}

impl fmt::Display for LineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// `Σ c_i s^i t^{d-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<Scalar>) -> BinaryForm {
        assert_eq!(coeffs.len(), degree + 1);
        BinaryForm { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// True when the line lies inside the curve.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    /// `F(x, 1)`.
    pub fn dehomogenized(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    /// Power of `t` dividing the form, i.e. the order at `(1 : 0)`.
    pub fn order_at_infinity(&self) -> usize {
        match self.coeffs.iter().rposition(|c| !c.is_zero()) {
            Some(top) => self.degree - top,
            None => usize::MAX,
        }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut mono = Vec::new();
            for (v, e) in [("s", i), ("t", self.degree - i)] {
                match e {
                    0 => {}
                    1 => mono.push(v.to_string()),
                    _ => mono.push(format!("{v}^{e}")),
                }
            }
            let body = mono.join("*");
            let coeff = if c.as_rational().is_some() {
                c.to_string()
            } else {
                format!("({c})")
            };
            parts.push(match (body.is_empty(), c.is_one()) {
                (true, _) => coeff,
                (false, true) => body,
                (false, false) if coeff == "-1" => format!("-{body}"),
                (false, false) => format!("{coeff}*{body}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

fn check_plane_curve(d: &MultiPoly) -> Result<usize> {
    if d.nvars() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: d.nvars(),
        });
    }
    match d.homogeneous_degree() {
        Some(0) => Err(Error::ConstantPolynomial(d.to_string())),
        Some(k) => Ok(k as usize),
        None => Err(Error::NotHomogeneous(d.to_string())),
    }
}

fn gradient_at(d: &MultiPoly, p: &ProjectivePoint) -> Result<Vec<Scalar>> {
    d.gradient()
        .iter()
        .map(|g| g.evaluate(p.coords()))
        .collect()
}

/// The line `∇D(p) · X = 0`.
pub fn tangent_line(d: &MultiPoly, p: &ProjectivePoint) -> Result<LineForm> {
    check_plane_curve(d)?;
    if !d.evaluate(p.coords())?.is_zero() {
        return Err(Error::NotOnCurve);
    }
    let g = gradient_at(d, p)?;
    if g.iter().all(Scalar::is_zero) {
        return Err(Error::SingularPoint);
    }
    LineForm::new(g)
}

/// `D(s a + t b)` for the parametrization of `line`.
pub fn restrict_to_line(d: &MultiPoly, line: &LineForm) -> Result<BinaryForm> {
    let deg = check_plane_curve(d)?;
    let (a, b) = line.basis();
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| MultiPoly::linear(&[a[i].clone(), b[i].clone()]))
        .collect();
    let r = d.substitute(&images);
    let coeffs = (0..=deg)
        .map(|i| {
            r.coeff(&crate::poly::Monomial::new(vec![
                i as u32,
                (deg - i) as u32,
            ]))
        })
        .collect();
    Ok(BinaryForm::new(deg, coeffs))
}

/// Order of vanishing of `bf` at `(s0 : t0)`.
pub fn multiplicity_at(bf: &BinaryForm, s0: &Scalar, t0: &Scalar) -> Result<usize> {
    if bf.is_zero() {
        return Err(Error::InvalidInput(
            "multiplicity on the zero form is infinite".into(),
        ));
    }
    if s0.is_zero() && t0.is_zero() {
        return Err(Error::InvalidInput("(0 : 0) is not a parameter".into()));
    }
    if t0.is_zero() {
        return Ok(bf.order_at_infinity());
    }
    Ok(bf.dehomogenized().root_multiplicity(&(s0 * &t0.inv())))
}

/// A point of an intersection, standing for its whole conjugacy class when
/// its coordinates lie in an extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub point: ProjectivePoint,
    pub multiplicity: usize,
    /// Number of conjugate points represented (the degree of the point's field).
    pub class_size: usize,
}

fn class_size(p: &ProjectivePoint) -> usize {
    p.field().map_or(1, |k| k.degree())
}

/// Intersection of a line with a curve, with multiplicities.
pub fn line_intersection_points(line: &LineForm, d: &MultiPoly) -> Result<Vec<IntersectionPoint>> {
    let bf = restrict_to_line(d, line)?;
    if bf.is_zero() {
        return Err(Error::CommonComponent(format!(
            ": the line {line} lies on the curve"
        )));
    }
    let mut out = Vec::new();
    let push = |out: &mut Vec<IntersectionPoint>, s: &Scalar, t: &Scalar, m: usize| -> Result<()> {
        let point = ProjectivePoint::new(line.point_at(s, t))?;
        let class_size = class_size(&point);
        out.push(IntersectionPoint {
            point,
            multiplicity: m,
            class_size,
        });
        Ok(())
    };
    let inf = bf.order_at_infinity();
    if inf > 0 {
        push(&mut out, &Scalar::one(), &Scalar::zero(), inf)?;
    }
    let g = bf.dehomogenized();
    if g.is_constant() {
        return Ok(out);
    }
    if bf.is_rational() {
        for (factor, m) in factor_over_q(&g)?.factors {
            let root = if factor.degree() == Some(1) {
                -(&factor.coeff(0) * &factor.coeff(1).inv())
            } else {
                root_of_irreducible(&factor).1
            };
            push(&mut out, &root, &Scalar::one(), m)?;
        }
    } else {
        for (part, m) in g.squarefree_decomposition() {
            if part.degree() != Some(1) {
                return Err(Error::UnsupportedTower(format!(
                    "intersection points over a degree-{} extension of a number field",
                    part.degree().unwrap_or(0)
                )));
            }
            let root = -(&part.coeff(0) * &part.coeff(1).inv());
            push(&mut out, &root, &Scalar::one(), m)?;
        }
    }
    Ok(out)
}

/// Smooth point whose tangent line meets the curve there with multiplicity `deg D`.
pub fn is_maximal_inflexion(d: &MultiPoly, p: &ProjectivePoint) -> Result<bool> {
    let deg = check_plane_curve(d)?;
    if deg < 3 {
        return Err(Error::DegreeTooSmall {
            found: deg,
            required: 3,
        });
    }
    let line = tangent_line(d, p)?;
    let bf = restrict_to_line(d, &line)?;
    if bf.is_zero() {
        return Ok(false);
    }
    let (s, t) = line.parameter_of(p)?;
    Ok(multiplicity_at(&bf, &s, &t)? == deg)
}

/// A factor of the projected intersection whose points were not enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnresolvedFactor {
    /// Irreducible factor of the resultant, in the variable `x`.
    pub factor: String,
    pub degree: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveIntersection {
    pub points: Vec<IntersectionPoint>,
    pub unresolved: Vec<UnresolvedFactor>,
}

impl CurveIntersection {
    /// Points counted with conjugates and multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.points
            .iter()
            .map(|p| p.multiplicity * p.class_size)
            .sum::<usize>()
            + self
                .unresolved
                .iter()
                .map(|u| u.multiplicity * u.degree)
                .sum::<usize>()
    }
}

/// Shears `X0 += a X2, X1 += b X2` tried in turn to move the projection centre.
fn shear_candidates() -> impl Iterator<Item = (i64, i64)> {
    (0i64..).flat_map(|r| {
        let mut v = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                if a.abs().max(b.abs()) == r {
                    v.push((a, b));
                }
            }
        }
        v
    })
}

/// `P(x0, x1, X2)` as a polynomial in `X2`.
fn fiber(p: &MultiPoly, x0: &Scalar, x1: &Scalar) -> UniPoly {
    let d = p.degree_in(2).unwrap_or(0) as usize;
    let mut coeffs = vec![Scalar::zero(); d + 1];
    for (m, c) in p.terms() {
        let e = m.exps();
        coeffs[e[2] as usize] = &coeffs[e[2] as usize] + &(&(c * &x0.pow(e[0])) * &x1.pow(e[1]));
    }
    UniPoly::new(coeffs)
}

/// All intersection points of two plane curves over `Q` whose fields have
/// degree at most `max_ext_degree`, with multiplicities; other points are
/// reported as unresolved resultant factors.
pub fn intersect_curves(
    f: &MultiPoly,
    g: &MultiPoly,
    max_ext_degree: usize,
) -> Result<CurveIntersection> {
    let df = check_plane_curve(f)?;
    let dg = check_plane_curve(g)?;
    if !f.is_rational() || !g.is_rational() {
        return Err(Error::UnsupportedTower(
            "curve intersection needs rational equations".into(),
        ));
    }
    for (a, b) in shear_candidates().take(400) {
        let centre = [Scalar::from_int(a), Scalar::from_int(b), Scalar::one()];
        if f.evaluate(&centre)?.is_zero() || g.evaluate(&centre)?.is_zero() {
            continue;
        }
        let change = LinearChange::from_ints(&[vec![1, 0, a], vec![0, 1, b], vec![0, 0, 1]])?;
        let fs = change.apply(f)?;
        let gs = change.apply(g)?;
        let r = crate::elimination::resultant_in_var(&fs, &gs, 2)?;
        if r.is_zero() {
            return Err(Error::CommonComponent(String::new()));
        }
        if let Some(result) = resolve_projection(&fs, &gs, &r, df * dg, &change, max_ext_degree)? {
            return Ok(result);
        }
    }
    Err(Error::InvalidInput(
        "no projection separated the intersection points".into(),
    ))
}

/// `None` when some line through the centre carries more than one point.
fn resolve_projection(
    fs: &MultiPoly,
    gs: &MultiPoly,
    r: &MultiPoly,
    total: usize,
    change: &LinearChange,
    max_ext_degree: usize,
) -> Result<Option<CurveIntersection>> {
    // r is a binary form in X0, X1 of degree deg F * deg G
    let coeffs: Vec<Scalar> = (0..=total)
        .map(|i| {
            r.coeff(&crate::poly::Monomial::new(vec![
                i as u32,
                (total - i) as u32,
                0,
            ]))
        })
        .collect();
    let bf = BinaryForm::new(total, coeffs);
    let mut fibres: Vec<(Scalar, Scalar, usize)> = Vec::new();
    let mut unresolved = Vec::new();
    let inf = bf.order_at_infinity();
    if inf > 0 {
        fibres.push((Scalar::one(), Scalar::zero(), inf));
    }
    let h = bf.dehomogenized();
    if !h.is_constant() {
        for (factor, m) in factor_over_q(&h)?.factors {
            let e = factor.degree().unwrap();
            if e > max_ext_degree {
                unresolved.push(UnresolvedFactor {
                    factor: factor.to_string_in("x"),
                    degree: e,
                    multiplicity: m,
                });
                continue;
            }
            let root = if e == 1 {
                -(&factor.coeff(0) * &factor.coeff(1).inv())
            } else {
                root_of_irreducible(&factor).1
            };
            fibres.push((root, Scalar::one(), m));
        }
    }
    let mut points = Vec::new();
    for (x0, x1, m) in fibres {
        let common = fiber(fs, &x0, &x1).gcd(&fiber(gs, &x0, &x1));
        let sq = common.squarefree_part();
        if sq.degree() != Some(1) {
            return Ok(None);
        }
        let x2 = -(&sq.coeff(0) * &sq.coeff(1).inv());
        let original = mat_vec(change.matrix(), &[x0, x1, x2]);
        let point = ProjectivePoint::new(original)?;
        let class_size = class_size(&point);
        points.push(IntersectionPoint {
            point,
            multiplicity: m,
            class_size,
        });
    }
    Ok(Some(CurveIntersection { points, unresolved }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflexionSearch {
    /// Maximal inflexion points, each standing for its conjugacy class.
    pub points: Vec<IntersectionPoint>,
    /// Inflexion-scheme factors over fields larger than the requested bound.
    pub unresolved: Vec<UnresolvedFactor>,
    /// Singular points of the curve met by the search; never inflexions.
    pub singular: Vec<ProjectivePoint>,
}

impl InflexionSearch {
    /// Number of geometric points reported, counting conjugates.
    pub fn point_count(&self) -> usize {
        self.points.iter().map(|p| p.class_size).sum()
    }
}

/// Maximal inflexion points among the points of `D = Hess D = 0` whose fields
/// have degree at most `max_ext_degree`. Singular points of `D` lie on the
/// Hessian too; they are listed apart.
pub fn find_maximal_inflexions(
    d: &MultiPoly,
    max_ext_degree: usize,
    settings: &Settings,
) -> Result<InflexionSearch> {
    let deg = check_plane_curve(d)?;
    if deg < 3 {
        return Err(Error::DegreeTooSmall {
            found: deg,
            required: 3,
        });
    }
    let hess = hessian_det(d)?;
    if hess.is_zero() {
        return Err(Error::CommonComponent(
            ": the Hessian vanishes identically (the curve contains a line)".into(),
        ));
    }
    let scheme = intersect_curves(d, &hess, max_ext_degree)?;
    let verdicts = par::map(settings.exec, &scheme.points, |p| -> Result<Option<bool>> {
        if gradient_at(d, &p.point)?.iter().all(Scalar::is_zero) {
            return Ok(None);
        }
        is_maximal_inflexion(d, &p.point).map(Some)
    });
    let mut points = Vec::new();
    let mut singular = Vec::new();
    for (p, v) in scheme.points.into_iter().zip(verdicts) {
        match v? {
            None => singular.push(p.point),
            Some(true) => points.push(p),
            Some(false) => {}
        }
    }
    Ok(InflexionSearch {
        points,
        unresolved: scheme.unresolved,
        singular,
    })
}

const FULTON_STEP_LIMIT: usize = 100_000;

/// Local intersection number of two plane curves at `p`.
pub fn intersection_multiplicity(
    f: &MultiPoly,
    g: &MultiPoly,
    p: &ProjectivePoint,
) -> Result<usize> {
    check_plane_curve(f)?;
    check_plane_curve(g)?;
    if p.coords().len() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: p.coords().len(),
        });
    }
    // affine chart at the first nonzero coordinate, translated to the origin
    let k = p.coords().iter().position(|c| !c.is_zero()).unwrap();
    let mut images = Vec::with_capacity(3);
    let mut slot = 0;
    for i in 0..3 {
        if i == k {
            images.push(MultiPoly::one(2));
        } else {
            let mut lin = vec![Scalar::zero(); 3];
            lin[slot] = Scalar::one();
            lin[2] = p.coords()[i].clone();
            images.push(affine_linear(&lin));
            slot += 1;
        }
    }
    fulton(f.substitute(&images), g.substitute(&images))
}

/// `c0 x + c1 y + c2` in two variables.
fn affine_linear(c: &[Scalar]) -> MultiPoly {
    let x = MultiPoly::var(2, 0).scale(&c[0]);
    let y = MultiPoly::var(2, 1).scale(&c[1]);
    &(&x + &y) + &MultiPoly::constant(2, c[2].clone())
}

/// `P(x, 0)`.
fn on_x_axis(p: &MultiPoly) -> UniPoly {
    let c0 = p.coefficients_in(1).swap_remove(0);
    let d = c0.degree_in(0).unwrap_or(0) as usize;
    let mut coeffs = vec![Scalar::zero(); d + 1];
    for (m, c) in c0.terms() {
        coeffs[m.exps()[0] as usize] = c.clone();
    }
    UniPoly::new(coeffs)
}

fn fulton(mut f: MultiPoly, mut g: MultiPoly) -> Result<usize> {
    let y = MultiPoly::var(2, 1);
    let mut acc = 0;
    for _ in 0..FULTON_STEP_LIMIT {
        if f.is_zero() || g.is_zero() {
            return Err(Error::CommonComponent(" through the point".into()));
        }
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Ok(acc);
        }
        let mut f0 = on_x_axis(&f);
        let mut g0 = on_x_axis(&g);
        if f0.is_zero() && g0.is_zero() {
            return Err(Error::CommonComponent(" through the point".into()));
        }
        if f0.is_zero() {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut f0, &mut g0);
        }
        if g0.is_zero() {
            acc += f0.root_multiplicity(&Scalar::zero());
            g = g.exact_div(&y).expect("y divides g");
            continue;
        }
        if f0.degree() > g0.degree() {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut f0, &mut g0);
        }
        let shift = (g0.degree().unwrap() - f0.degree().unwrap()) as u32;
        let ratio = &g0.lead() * &f0.lead().inv();
        g = &g - &f.mul_monomial(&crate::poly::Monomial::new(vec![shift, 0]), &ratio);
    }
    Err(Error::InvalidInput(
        "intersection multiplicity did not terminate".into(),
    ))
}
