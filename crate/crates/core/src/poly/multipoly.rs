use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::scalar::{NumberField, Scalar};

/// Exponent vector, one entry per ambient variable.
///
/// The derived ordering is graded lexicographic (`X0 > X1 > …` within a degree),
/// the canonical printing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse multivariate polynomial over exact scalars. No zero coefficient is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> MultiPoly {
        MultiPoly::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> MultiPoly {
        MultiPoly::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> MultiPoly {
        assert!(i < nvars, "variable index out of range");
        MultiPoly::from_terms(nvars, [(Monomial::var(nvars, i), Scalar::one())])
    }

    /// Sums the given terms; repeated monomials are combined and zeros dropped.
    pub fn from_terms<I>(nvars: usize, terms: I) -> MultiPoly
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ c_i X_i`.
    pub fn linear(coeffs: &[Scalar]) -> MultiPoly {
        let n = coeffs.len();
        MultiPoly::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.total_degree()
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Leading term under graded lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    pub fn field(&self) -> Result<Option<Arc<NumberField>>> {
        Scalar::common_field(self.terms.values())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, pt: &[Scalar]) -> Result<Scalar> {
        if pt.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: pt.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in pt.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * &Scalar::from_int(e as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i))
            .collect()
    }

    /// Substitute `X_i ↦ images[i]`; all images share an arity.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars, "substitution arity");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(p.nvars), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Substitute `X_i ↦ Σ_j rows[i][j] Y_j` with `Y` of arity `rows[i].len()`.
    pub fn substitute_linear(&self, rows: &[Vec<Scalar>]) -> MultiPoly {
        let images: Vec<MultiPoly> = rows.iter().map(|r| MultiPoly::linear(r)).collect();
        self.substitute(&images)
    }

    /// Coefficients with respect to `var` (ascending powers), each a polynomial in
    /// the same ambient ring not involving `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut exps = m.0.clone();
            exps[var] = 0;
            out[e].add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Exact quotient by `d`; `None` when the division leaves a remainder.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading_term()?;
        let dm = dm.clone();
        let dc_inv = dc.inv();
        let mut r = self.clone();
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = r.leading_term() {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = c * &dc_inv;
            r = &r - &d.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Printed with the given variable names, terms in descending graded-lex order.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            names[i].to_string()
                        } else {
                            format!("{}^{}", names[i], e)
                        }
                    })
                    .collect();
            let mono = mono.join("*");
            let (neg, body) = match c {
                Scalar::Rat(_) => {
                    let neg = c.is_negative_rational();
                    let abs = if neg { -c } else { c.clone() };
                    let body = if mono.is_empty() {
                        abs.to_string()
                    } else if abs.is_one() {
                        mono
                    } else {
                        format!("{abs}*{mono}")
                    };
                    (neg, body)
                }
                Scalar::Alg(_) => (
                    false,
                    if mono.is_empty() {
                        format!("({c})")
                    } else {
                        format!("({c})*{mono}")
                    },
                ),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

pub fn default_var_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|i| format!("X{i}")).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_string_with(&refs))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Determinant of the Hessian matrix of a ternary form.
pub fn hessian_det(p: &MultiPoly) -> Result<MultiPoly> {
    if p.nvars() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: p.nvars(),
        });
    }
    let d = p
        .homogeneous_degree()
        .ok_or_else(|| Error::NotHomogeneous(p.to_string()))?;
    if d < 2 {
        return Err(Error::DegreeTooSmall {
            found: d as usize,
            required: 2,
        });
    }
    let first = p.gradient();
    let h: Vec<Vec<MultiPoly>> = first.iter().map(|g| g.gradient()).collect();
    Ok(determinant(&h))
}

/// Determinant of a small square matrix of polynomials by cofactor expansion.
pub fn determinant(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    assert!(
        n > 0 && m.iter().all(|r| r.len() == n),
        "square matrix expected"
    );
    if n == 1 {
        return m[0][0].clone();
    }
    let nvars = m[0][0].nvars();
    let mut acc = MultiPoly::zero(nvars);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = entry * &determinant(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Raise each form to the power `l / d_i` where `l = lcm(d_i)`.
pub fn equalize_degrees(polys: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let mut degrees = Vec::with_capacity(polys.len());
    for p in polys {
        let d = p
            .homogeneous_degree()
            .ok_or_else(|| Error::NotHomogeneous(p.to_string()))?;
        if d == 0 {
            return Err(Error::ConstantPolynomial(p.to_string()));
        }
        degrees.push(d);
    }
    let l = degrees.iter().fold(1u32, |acc, d| acc.lcm(d));
    Ok(polys
        .iter()
        .zip(&degrees)
        .map(|(p, d)| p.pow(l / d))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly_default;

    fn p(s: &str) -> MultiPoly {
        parse_poly_default(s, 3).unwrap()
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("X0^3 - X1*X2^2").partial_derivative(1), p("-X2^2"));
        assert!(p("X0^2 + X1").partial_derivative(2).is_zero());
        let grad: Vec<Scalar> = p("X0^2 + X1^2 - X2^2")
            .gradient()
            .iter()
            .map(|g| {
                g.evaluate(&[Scalar::zero(), Scalar::one(), Scalar::one()])
                    .unwrap()
            })
            .collect();
        assert_eq!(
            grad,
            vec![Scalar::zero(), Scalar::from_int(2), Scalar::from_int(-2)]
        );
    }

    #[test]
    fn hessian_examples() {
        assert_eq!(
            hessian_det(&p("X0^3 + X1^3 + X2^3")).unwrap(),
            p("216*X0*X1*X2")
        );
        assert_eq!(hessian_det(&p("X0^2 + X1^2 - X2^2")).unwrap(), p("-8"));
        assert_eq!(hessian_det(&p("X0*X1*X2")).unwrap(), p("2*X0*X1*X2"));
        assert!(hessian_det(&parse_poly_default("X0^2", 2).unwrap()).is_err());
    }

    #[test]
    fn equalize_examples() {
        let a = p("X1");
        let b = p("X0^2 + X2^2");
        assert_eq!(
            equalize_degrees(&[a.clone(), b.clone()]).unwrap(),
            vec![a.pow(2), b.clone()]
        );
        let c = p("X0^3 - X1*X2^2");
        assert_eq!(
            equalize_degrees(&[b.clone(), c.clone()]).unwrap(),
            vec![b.pow(3), c.pow(2)]
        );
        assert_eq!(
            equalize_degrees(&[b.clone(), b.clone()]).unwrap(),
            vec![b.clone(), b]
        );
        assert!(matches!(
            equalize_degrees(&[p("3")]),
            Err(Error::ConstantPolynomial(_))
        ));
        assert!(matches!(
            equalize_degrees(&[p("X0 + X1^2")]),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn evaluate_examples() {
        let f = p("X0^3 - X1*X2^2");
        assert!(f
            .evaluate(&[Scalar::zero(), Scalar::zero(), Scalar::one()])
            .unwrap()
            .is_zero());
        assert!(matches!(
            f.evaluate(&[Scalar::one()]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn exact_division() {
        let a = p("X0 - X1");
        let b = p("X0^2 + 3*X1*X2");
        assert_eq!((&a * &b).exact_div(&a), Some(b.clone()));
        assert_eq!(b.exact_div(&a), None);
    }
}
