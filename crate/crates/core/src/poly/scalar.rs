//! Exact scalars: rationals and elements of simple extensions `Q[u]/(m(u))`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A simple algebraic extension of the rationals, `Q[u]/(m(u))`.
///
/// `m` is monic with integer coefficients. Irreducibility is certified by
/// [`crate::poly::extend_field`]; internal constructions that already hold an
/// irreducible factor use [`NumberField::from_irreducible`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    minpoly: Vec<BigInt>,
}

impl NumberField {
    /// Builds the field from a monic integer polynomial (ascending coefficients)
    /// already known to be irreducible of degree at least 2.
    pub fn from_irreducible(minpoly: Vec<BigInt>) -> Arc<NumberField> {
        assert!(minpoly.len() >= 3, "extension degree must be at least 2");
        assert!(
            minpoly.last().unwrap().is_one(),
            "minimal polynomial must be monic"
        );
        Arc::new(NumberField { minpoly })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Ascending integer coefficients of the minimal polynomial.
    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn minpoly_string(&self) -> String {
        let coeffs: Vec<Rational> = self
            .minpoly
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        format_rational_poly(&coeffs, "u")
    }

    /// The class of `u`.
    pub fn generator(self: &Arc<Self>) -> Scalar {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[1] = Rational::one();
        Scalar::Alg(AlgElem {
            field: self.clone(),
            coeffs,
        })
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        while v.len() > d {
            let c = v.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = v.len() - d;
            for j in 0..d {
                v[shift + j] -= &c * Rational::from(self.minpoly[j].clone());
            }
        }
        v.resize(d, Rational::zero());
        v
    }
}

/// Element of `Q[u]/(m)` stored in the power basis `1, u, …, u^{d-1}`.
/// Always has some nonzero coefficient beyond the constant one; purely
/// rational values are kept as [`Scalar::Rat`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElem {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl AlgElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coeffs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Alg(AlgElem),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(Rational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rat(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        Scalar::Rat(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: Rational) -> Scalar {
        Scalar::Rat(q)
    }

    /// Element with the given power-basis coordinates, reduced modulo the
    /// minimal polynomial.
    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<Rational>) -> Scalar {
        Scalar::normalize(field, field.reduce(coords))
    }

    fn normalize(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Scalar {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Scalar::Rat(coeffs.into_iter().next().unwrap_or_else(Rational::zero))
        } else {
            Scalar::Alg(AlgElem {
                field: field.clone(),
                coeffs,
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Alg(_) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(a) => Some(&a.field),
        }
    }

    /// Power-basis coordinates in `field` (rationals embed as constants).
    pub fn coords_in(&self, field: &NumberField) -> Vec<Rational> {
        match self {
            Scalar::Rat(q) => {
                let mut v = vec![Rational::zero(); field.degree()];
                v[0] = q.clone();
                v
            }
            Scalar::Alg(a) => {
                debug_assert_eq!(*a.field, *field);
                a.coeffs.clone()
            }
        }
    }

    /// The single extension field shared by `items`, if any.
    pub fn common_field<'a, I>(items: I) -> Result<Option<Arc<NumberField>>>
    where
        I: IntoIterator<Item = &'a Scalar>,
    {
        let mut found: Option<Arc<NumberField>> = None;
        for s in items {
            if let Some(f) = s.field() {
                match &found {
                    None => found = Some(f.clone()),
                    Some(g) if **g == **f => {}
                    Some(g) => {
                        return Err(Error::UnsupportedTower(format!(
                            "elements of Q[u]/({}) and Q[u]/({}) cannot be combined",
                            g.minpoly_string(),
                            f.minpoly_string()
                        )))
                    }
                }
            }
        }
        Ok(found)
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("division by zero")
    }

    pub fn try_inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(q.recip()))
                }
            }
            Scalar::Alg(a) => {
                let m: Vec<Rational> = a
                    .field
                    .minpoly
                    .iter()
                    .map(|c| Rational::from(c.clone()))
                    .collect();
                let inv = rpoly_inverse_mod(&a.coeffs, &m);
                Some(Scalar::from_coords(&a.field, inv))
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
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

    /// True for rationals that are negative; extension elements are never
    /// reported negative. Used only for sign-aware printing.
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_negative())
    }

    fn add_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Rat(q), Scalar::Alg(a)) | (Scalar::Alg(a), Scalar::Rat(q)) => {
                let mut c = a.coeffs.clone();
                c[0] += q;
                Scalar::Alg(AlgElem {
                    field: a.field.clone(),
                    coeffs: c,
                })
            }
            (Scalar::Alg(a), Scalar::Alg(b)) => {
                assert_same_field(&a.field, &b.field);
                let c = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
                Scalar::normalize(&a.field, c)
            }
        }
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(q), Scalar::Alg(a)) | (Scalar::Alg(a), Scalar::Rat(q)) => {
                if q.is_zero() {
                    return Scalar::zero();
                }
                let c = a.coeffs.iter().map(|x| x * q).collect();
                Scalar::Alg(AlgElem {
                    field: a.field.clone(),
                    coeffs: c,
                })
            }
            (Scalar::Alg(a), Scalar::Alg(b)) => {
                assert_same_field(&a.field, &b.field);
                let prod = rpoly_mul(&a.coeffs, &b.coeffs);
                Scalar::from_coords(&a.field, prod)
            }
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Alg(a) => Scalar::Alg(AlgElem {
                field: a.field.clone(),
                coeffs: a.coeffs.iter().map(|c| -c).collect(),
            }),
        }
    }
}

fn assert_same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) {
    assert!(
        Arc::ptr_eq(a, b) || **a == **b,
        "arithmetic between different number fields"
    );
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.mul_ref(&b.inv()));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rat(q)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{}", format_rational(q)),
            Scalar::Alg(a) => write!(f, "{}", format_rational_poly(&a.coeffs, "u")),
        }
    }
}

/// `p` or `p/q` with a positive denominator.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Ascending rational coefficients printed as a polynomial in `var`,
/// highest degree first.
pub fn format_rational_poly(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", format_rational(&abs), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn rpoly_trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rpoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    rpoly_trim(&mut r);
    let mut b = b.to_vec();
    rpoly_trim(&mut b);
    let db = b.len() - 1;
    let lc_inv = b[db].recip();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() * &lc_inv;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        rpoly_trim(&mut r);
    }
    (q, r)
}

/// Inverse of `a` modulo the irreducible `m` via the extended Euclidean algorithm.
fn rpoly_inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    // invariant: s_i * a ≡ r_i (mod m)
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    rpoly_trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while r1.len() > 1 {
        let (q, r) = rpoly_divrem(&r0, &r1);
        let qs = rpoly_mul(&q, &s1);
        let mut s2 = s0.clone();
        if s2.len() < qs.len() {
            s2.resize(qs.len(), Rational::zero());
        }
        for (i, c) in qs.into_iter().enumerate() {
            s2[i] -= c;
        }
        rpoly_trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    assert!(
        !r1.is_empty(),
        "element not invertible modulo the minimal polynomial"
    );
    let c = r1[0].recip();
    s1.iter().map(|x| x * &c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Arc<NumberField> {
        NumberField::from_irreducible(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)])
    }

    #[test]
    fn rational_normalization_is_structural() {
        assert_eq!(Scalar::from_ratio(2, 4), Scalar::from_ratio(-1, -2));
        assert_eq!(Scalar::from_ratio(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn sqrt2_arithmetic() {
        let k = sqrt2();
        let u = k.generator();
        assert_eq!(&u * &u, Scalar::from_int(2));
        let x = &u + Scalar::one();
        let inv = x.inv();
        assert_eq!(&x * &inv, Scalar::one());
        // 1/(1+u) = u - 1
        assert_eq!(inv, &u - Scalar::one());
        assert_eq!(x.to_string(), "u + 1");
    }

    #[test]
    fn cube_roots_of_unity() {
        let k =
            NumberField::from_irreducible(vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]);
        let w = k.generator();
        assert_eq!(w.pow(3), Scalar::one());
        assert_eq!(&w * &w + &w + Scalar::one(), Scalar::zero());
    }

    #[test]
    fn mixing_fields_is_rejected() {
        let a = sqrt2().generator();
        let b =
            NumberField::from_irreducible(vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)])
                .generator();
        assert!(matches!(
            Scalar::common_field([&a, &b]),
            Err(Error::UnsupportedTower(_))
        ));
        assert!(Scalar::common_field([&a, &Scalar::one()])
            .unwrap()
            .is_some());
    }
}
