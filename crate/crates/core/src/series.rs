//! Truncated power series over the Laurent field `Q((t))`, Newton polygons,
//! zero counting by valuation and constancy certificates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_rational, parse_poly, Rational};

/// Valuation of a coefficient that may be known only to finite precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(i64),
    /// Zero modulo `t^k`: the true valuation is at least `k`.
    AtLeast(i64),
    /// Exactly zero.
    Infinite,
}

/// `Σ c_k t^k + O(t^p)`, or an exact Laurent polynomial when `precision` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValuedScalar {
    terms: BTreeMap<i64, Rational>,
    precision: Option<i64>,
}

impl ValuedScalar {
    pub fn new(
        terms: impl IntoIterator<Item = (i64, Rational)>,
        precision: Option<i64>,
    ) -> ValuedScalar {
        let terms = terms
            .into_iter()
            .filter(|(k, c)| !c.is_zero() && precision.is_none_or(|p| *k < p))
            .fold(
                BTreeMap::new(),
                |mut acc: BTreeMap<i64, Rational>, (k, c)| {
                    let e = acc.entry(k).or_insert_with(Rational::zero);
                    *e += c;
                    if e.is_zero() {
                        acc.remove(&k);
                    }
                    acc
                },
            );
        ValuedScalar { terms, precision }
    }

    pub fn zero() -> ValuedScalar {
        ValuedScalar::default()
    }

    pub fn from_rational(c: Rational) -> ValuedScalar {
        ValuedScalar::new([(0, c)], None)
    }

    /// `c t^k`.
    pub fn monomial(c: Rational, k: i64) -> ValuedScalar {
        ValuedScalar::new([(k, c)], None)
    }

    /// `O(t^k)`.
    pub fn big_o(k: i64) -> ValuedScalar {
        ValuedScalar::new([], Some(k))
    }

    /// Parses a polynomial in `t` with an optional trailing `+ O(t^k)`.
    pub fn parse(text: &str) -> Result<ValuedScalar> {
        let (body, precision) = match text.find("O(") {
            Some(pos) => {
                let inner = text[pos + 2..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Syntax {
                        position: text.len(),
                        message: "expected `)`".into(),
                    })?;
                let k = match inner.trim() {
                    "1" => 0,
                    "t" => 1,
                    s => s
                        .strip_prefix("t^")
                        .and_then(|e| e.trim().parse::<i64>().ok())
                        .ok_or_else(|| Error::Syntax {
                            position: pos,
                            message: "expected O(t^k)".into(),
                        })?,
                };
                let head = text[..pos].trim_end();
                let head = head.strip_suffix('+').unwrap_or(head).trim();
                (head, Some(k))
            }
            None => (text, None),
        };
        if body.is_empty() {
            return Ok(ValuedScalar::new([], precision));
        }
        let p = parse_poly(body, &["t"])?;
        let terms = p
            .terms()
            .map(|(m, c)| {
                let q = c.as_rational().cloned().ok_or_else(|| {
                    Error::InvalidInput("series coefficients must be rational in t".into())
                })?;
                Ok((m.exps()[0] as i64, q))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ValuedScalar::new(terms, precision))
    }

    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    pub fn valuation(&self) -> Valuation {
        match (self.terms.keys().next(), self.precision) {
            (Some(&k), _) => Valuation::Exact(k),
            (None, Some(p)) => Valuation::AtLeast(p),
            (None, None) => Valuation::Infinite,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.valuation() == Valuation::Infinite
    }

    /// Leading coefficient, when the valuation is known.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next()
    }
}

impl Add for &ValuedScalar {
    type Output = ValuedScalar;
    fn add(self, other: &ValuedScalar) -> ValuedScalar {
        let precision = match (self.precision, other.precision) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        ValuedScalar::new(
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(k, c)| (*k, c.clone())),
            precision,
        )
    }
}

impl Mul for &ValuedScalar {
    type Output = ValuedScalar;
    fn mul(self, other: &ValuedScalar) -> ValuedScalar {
        // x (y + O(t^q)) is known modulo t^{v(x) + q}
        let bound = |x: &ValuedScalar, q: Option<i64>| -> Option<i64> {
            let q = q?;
            match x.valuation() {
                Valuation::Exact(v) | Valuation::AtLeast(v) => Some(v + q),
                Valuation::Infinite => None,
            }
        };
        let precision = match (bound(self, other.precision), bound(other, self.precision)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut terms = Vec::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                terms.push((i + j, a * b));
            }
        }
        ValuedScalar::new(terms, precision)
    }
}

impl Neg for &ValuedScalar {
    type Output = ValuedScalar;
    fn neg(self) -> ValuedScalar {
        ValuedScalar::new(self.terms.iter().map(|(k, c)| (*k, -c)), self.precision)
    }
}

impl fmt::Display for ValuedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in &self.terms {
            let mono = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            let coeff = format_rational(c);
            parts.push(match (mono.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => mono,
                (false, "-1") => format!("-{mono}"),
                _ => format!("{coeff}*{mono}"),
            });
        }
        if let Some(p) = self.precision {
            parts.push(format!("O(t^{p})"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// What is known about the coefficients past the stored ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    Zero,
    /// `v(a_i) >= offset + slope * i` for every index past the stored ones.
    AtLeast {
        offset: Rational,
        slope: Rational,
    },
    Unknown,
}

pub const DEFAULT_PRECISION: usize = 64;

/// `Σ a_i z^i` with `a_0 … a_{M-1}` stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ValuedScalar>,
    tail: Tail,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<ValuedScalar>, tail: Tail) -> TruncatedSeries {
        TruncatedSeries { coeffs, tail }
    }

    /// Exact polynomial in `z`.
    pub fn polynomial(coeffs: Vec<ValuedScalar>) -> TruncatedSeries {
        TruncatedSeries::new(coeffs, Tail::Zero)
    }

    /// Sparse `(index, coefficient)` input cut at `precision` stored
    /// coefficients; dropping a nonzero coefficient past the cut turns a zero
    /// tail into an unknown one.
    pub fn from_pairs(
        pairs: &[(usize, ValuedScalar)],
        precision: usize,
        tail: Tail,
    ) -> TruncatedSeries {
        let top = pairs
            .iter()
            .map(|(i, _)| i + 1)
            .max()
            .unwrap_or(0)
            .min(precision);
        let mut coeffs = vec![ValuedScalar::zero(); top];
        let mut dropped = false;
        for (i, c) in pairs {
            if *i < precision {
                coeffs[*i] = &coeffs[*i] + c;
            } else if !c.is_exact_zero() {
                dropped = true;
            }
        }
        let tail = if dropped && tail == Tail::Zero {
            Tail::Unknown
        } else {
            tail
        };
        TruncatedSeries::new(coeffs, tail)
    }

    pub fn coeffs(&self) -> &[ValuedScalar] {
        &self.coeffs
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Number of stored coefficients.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Product of exact polynomials.
    pub fn mul_polynomial(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.tail != Tail::Zero || other.tail != Tail::Zero {
            return Err(Error::InvalidInput(
                "products are only formed for polynomials".into(),
            ));
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(TruncatedSeries::polynomial(Vec::new()));
        }
        let mut out = vec![ValuedScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(TruncatedSeries::polynomial(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: (usize, Rational),
    pub end: (usize, Rational),
    pub slope: Rational,
    pub length: usize,
    /// No uncomputed coefficient can reach the segment's supporting line.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Rational)>,
    pub segments: Vec<Segment>,
    /// Leading coefficients that are exactly zero.
    pub order_at_origin: usize,
    pub certified: bool,
}

/// Points `(i, k)` where only `v(a_i) >= k` is known.
fn uncertain_points(f: &TruncatedSeries) -> Vec<(usize, Rational)> {
    f.coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.valuation() {
            Valuation::AtLeast(k) => Some((i, Rational::from_integer(k.into()))),
            _ => None,
        })
        .collect()
}

/// Whether every uncomputed coefficient lies strictly above the line through
/// `(x0, y0)` with slope `s`, restricted to indices `> after` when given.
fn strictly_above(
    f: &TruncatedSeries,
    x0: usize,
    y0: &Rational,
    s: &Rational,
    after: Option<usize>,
) -> bool {
    let line = |i: usize| y0 + s * Rational::from_integer((i as i64 - x0 as i64).into());
    let stored = uncertain_points(f)
        .into_iter()
        .filter(|(i, _)| after.is_none_or(|a| *i > a))
        .all(|(i, k)| k > line(i));
    if !stored {
        return false;
    }
    let m = f.precision();
    match &f.tail {
        Tail::Zero => true,
        Tail::Unknown => false,
        Tail::AtLeast { offset, slope } => {
            // the gap is linear in i, so it suffices to check i = M and the slope
            let at_m = offset + slope * Rational::from_integer((m as i64).into());
            slope >= s && at_m > line(m)
        }
    }
}

fn definite_points(f: &TruncatedSeries) -> Vec<(usize, Rational)> {
    f.coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.valuation() {
            Valuation::Exact(v) => Some((i, Rational::from_integer(v.into()))),
            _ => None,
        })
        .collect()
}

fn lower_hull(points: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut hull: Vec<(usize, Rational)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // drop b when it is on or above the segment a -> p
            let lhs = (&b.1 - &a.1) * Rational::from_integer(((p.0 - a.0) as i64).into());
            let rhs = (&p.1 - &a.1) * Rational::from_integer(((b.0 - a.0) as i64).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p.clone());
    }
    hull
}

pub fn newton_polygon(f: &TruncatedSeries) -> Result<NewtonPolygon> {
    let points = definite_points(f);
    if points.is_empty() {
        return Err(Error::InvalidInput(
            "series is zero within precision".into(),
        ));
    }
    let order_at_origin = f.coeffs.iter().take_while(|c| c.is_exact_zero()).count();
    let vertices = lower_hull(&points);
    let segments: Vec<Segment> = vertices
        .windows(2)
        .map(|w| {
            let length = w[1].0 - w[0].0;
            let slope = (&w[1].1 - &w[0].1) / Rational::from_integer((length as i64).into());
            let certified = strictly_above(f, w[0].0, &w[0].1, &slope, None);
            Segment {
                start: w[0].clone(),
                end: w[1].clone(),
                slope,
                length,
                certified,
            }
        })
        .collect();
    let certified = segments.iter().all(|s| s.certified) && order_at_origin == points[0].0;
    Ok(NewtonPolygon {
        vertices,
        segments,
        order_at_origin,
        certified,
    })
}

/// Number of zeros of valuation at least `threshold`, counted with
/// multiplicity, including the zero at the origin.
pub fn count_zeros(f: &TruncatedSeries, threshold: &Rational) -> Result<usize> {
    let poly = newton_polygon(f)?;
    let first = poly.vertices[0].clone();
    let steep: Vec<&Segment> = poly
        .segments
        .iter()
        .filter(|s| s.slope <= -threshold)
        .collect();
    let last = steep.last().map_or(first.clone(), |s| s.end.clone());
    let uncertified = |what: &str| {
        Err(Error::UncertifiedRegion(format!(
            "{what} at threshold {}",
            format_rational(threshold)
        )))
    };

    // coefficients left of the first vertex count as zeros of large valuation
    // (or at the origin) when they cannot rise above the threshold line
    for (i, k) in uncertain_points(f)
        .into_iter()
        .filter(|(i, _)| *i < first.0)
    {
        let needed = &first.1 + threshold * Rational::from_integer(((first.0 - i) as i64).into());
        if k < needed {
            return uncertified("an unknown leading coefficient");
        }
    }
    for s in &steep {
        if !strictly_above(f, s.start.0, &s.start.1, &s.slope, Some(first.0)) {
            return uncertified("a hull segment");
        }
    }
    if !strictly_above(f, last.0, &last.1, &-threshold, Some(last.0)) {
        return uncertified("the truncated tail");
    }
    Ok(first.0 + steep.iter().map(|s| s.length).sum::<usize>())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonvanishingReport {
    /// A zero is certified; `None` stands for the zero at the origin.
    HasZero {
        valuation: Option<Rational>,
    },
    /// Some higher coefficient is nonzero, so the series has zeros over the
    /// completed closure, but none is certified at this precision.
    NotConstantHenceHasZeroInClosure,
    ConstantWithinPrecision,
}

impl NonvanishingReport {
    pub fn status(&self) -> &'static str {
        match self {
            NonvanishingReport::HasZero { .. } => "HAS_ZERO",
            NonvanishingReport::NotConstantHenceHasZeroInClosure => {
                "NOT_CONSTANT_HENCE_HAS_ZERO_IN_CLOSURE"
            }
            NonvanishingReport::ConstantWithinPrecision => "CONSTANT_WITHIN_PRECISION",
        }
    }
}

/// Contrapositive of "a nonvanishing entire function is constant" at finite precision.
pub fn certify_nonvanishing_implies_constant(f: &TruncatedSeries) -> NonvanishingReport {
    let higher_nonzero = f
        .coeffs
        .iter()
        .skip(1)
        .any(|c| matches!(c.valuation(), Valuation::Exact(_)));
    if !higher_nonzero {
        if f.coeffs.first().is_some_and(ValuedScalar::is_exact_zero) && f.tail == Tail::Zero {
            return NonvanishingReport::HasZero { valuation: None };
        }
        return NonvanishingReport::ConstantWithinPrecision;
    }
    if f.coeffs[0].is_exact_zero() {
        return NonvanishingReport::HasZero { valuation: None };
    }
    if let Ok(poly) = newton_polygon(f) {
        if let Some(s) = poly.segments.iter().find(|s| s.certified) {
            return NonvanishingReport::HasZero {
                valuation: Some(-s.slope.clone()),
            };
        }
    }
    NonvanishingReport::NotConstantHenceHasZeroInClosure
}

/// Slopes of a polygon, one entry per unit of horizontal length.
pub fn slope_multiset(poly: &NewtonPolygon) -> Vec<Rational> {
    let mut out: Vec<Rational> = poly
        .segments
        .iter()
        .flat_map(|s| std::iter::repeat_n(s.slope.clone(), s.length))
        .collect();
    out.sort();
    out
}

/// Rational valuation rendered as `p/q` or an integer.
pub fn format_valuation(v: &Rational) -> String {
    if v.is_integer() || v.denom().is_one() {
        v.numer().to_string()
    } else if v.is_negative() {
        format!("-{}/{}", v.numer().abs(), v.denom())
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(s: &str) -> ValuedScalar {
        ValuedScalar::parse(s).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn poly(cs: &[&str]) -> TruncatedSeries {
        TruncatedSeries::polynomial(cs.iter().map(|s| vs(s)).collect())
    }

    #[test]
    fn parsing_and_valuations() {
        assert_eq!(vs("t^3 - 2*t^5").valuation(), Valuation::Exact(3));
        assert_eq!(vs("O(t^4)").valuation(), Valuation::AtLeast(4));
        assert_eq!(vs("t + O(t^2)").to_string(), "t + O(t^2)");
        assert_eq!(vs("0").valuation(), Valuation::Infinite);
        assert_eq!(vs("t^2 + t^7 + O(t^5)"), vs("t^2 + O(t^5)"));
    }

    #[test]
    fn valuation_rules() {
        let x = vs("t^2 + 3*t^4");
        let y = vs("-t^2 + t^3");
        assert_eq!((&x * &y).valuation(), Valuation::Exact(4));
        assert_eq!((&x + &y).valuation(), Valuation::Exact(3));
        let z = vs("t + O(t^3)");
        assert_eq!((&x * &z).precision(), Some(5));
    }

    #[test]
    fn product_of_linear_factors() {
        // (z - t)(z - t^2) = t^3 - (t + t^2) z + z^2
        let f = poly(&["t^3", "-t - t^2", "1"]);
        let p = newton_polygon(&f).unwrap();
        assert_eq!(p.vertices, vec![(0, q(3)), (1, q(1)), (2, q(0))]);
        assert_eq!(slope_multiset(&p), vec![q(-2), q(-1)]);
        assert!(p.certified);
        assert_eq!(count_zeros(&f, &q(1)).unwrap(), 2);
        assert_eq!(count_zeros(&f, &q(2)).unwrap(), 1);
        assert_eq!(count_zeros(&f, &q(3)).unwrap(), 0);
    }

    #[test]
    fn trivial_polygons() {
        let c = poly(&["5"]);
        let p = newton_polygon(&c).unwrap();
        assert_eq!(p.vertices, vec![(0, q(0))]);
        assert!(p.segments.is_empty());
        assert_eq!(count_zeros(&c, &q(-10)).unwrap(), 0);
        let cube = poly(&["0", "0", "0", "1"]);
        assert_eq!(newton_polygon(&cube).unwrap().order_at_origin, 3);
        assert_eq!(count_zeros(&cube, &q(100)).unwrap(), 3);
        assert!(newton_polygon(&poly(&["0"])).is_err());
    }

    #[test]
    fn truncation_is_flagged() {
        // 1 + t z + O(t^0) z^2: the unknown coefficient could undercut the hull
        let f = TruncatedSeries::polynomial(vec![vs("1"), vs("t"), vs("O(1)")]);
        assert!(!newton_polygon(&f).unwrap().segments[0].certified);
        assert!(count_zeros(&f, &q(-1)).is_err());
        let g = TruncatedSeries::new(vec![vs("1"), vs("t")], Tail::Unknown);
        assert!(matches!(
            count_zeros(&g, &q(0)),
            Err(Error::UncertifiedRegion(_))
        ));
        let h = TruncatedSeries::new(
            vec![vs("1"), vs("t")],
            Tail::AtLeast {
                offset: q(0),
                slope: q(3),
            },
        );
        assert!(newton_polygon(&h).unwrap().certified);
        assert_eq!(count_zeros(&h, &q(-1)).unwrap(), 1);
    }

    #[test]
    fn nonvanishing_reports() {
        assert_eq!(
            certify_nonvanishing_implies_constant(&poly(&["1", "t"])),
            NonvanishingReport::HasZero {
                valuation: Some(q(-1))
            }
        );
        assert_eq!(
            certify_nonvanishing_implies_constant(&poly(&["7"])),
            NonvanishingReport::ConstantWithinPrecision
        );
        let g = TruncatedSeries::new(vec![vs("1"), vs("t")], Tail::Unknown);
        assert_eq!(
            certify_nonvanishing_implies_constant(&g),
            NonvanishingReport::NotConstantHenceHasZeroInClosure
        );
    }

    #[test]
    fn sparse_input_is_truncated() {
        let pairs = vec![(0, vs("1")), (100, vs("t"))];
        let f = TruncatedSeries::from_pairs(&pairs, DEFAULT_PRECISION, Tail::Zero);
        assert_eq!(f.precision(), DEFAULT_PRECISION);
        assert_eq!(f.tail(), &Tail::Unknown);
    }
}
