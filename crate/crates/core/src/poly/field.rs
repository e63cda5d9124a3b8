use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::factor::{factor_over_q, primitive_integer};
use crate::poly::scalar::{NumberField, Rational, Scalar};
use crate::poly::univariate::UniPoly;

/// Build `Q[u]/(m)` after certifying that the monic integer polynomial `m`
/// is irreducible over `Q`.
pub fn extend_field(minpoly: &UniPoly) -> Result<Arc<NumberField>> {
    let coeffs = minpoly.rational_coeffs().ok_or_else(|| {
        Error::UnsupportedTower("minimal polynomial must have rational coefficients".into())
    })?;
    if coeffs.len() < 3 {
        return Err(Error::InvalidInput(
            "extension degree must be at least 2".into(),
        ));
    }
    if !coeffs.last().unwrap().is_one() || coeffs.iter().any(|c| !c.is_integer()) {
        return Err(Error::InvalidInput(
            "minimal polynomial must be monic with integer coefficients".into(),
        ));
    }
    let fac = factor_over_q(minpoly)?;
    if !fac.is_irreducible() {
        let first = &fac.factors[0].0;
        return Err(Error::ReducibleMinpoly {
            factor: first.to_string_in("u"),
        });
    }
    Ok(NumberField::from_irreducible(
        coeffs.iter().map(|c| c.to_integer()).collect(),
    ))
}

/// A root of an irreducible rational polynomial of degree at least 2, as an
/// element of a number field. Quadratic fields are presented as `Q(√d)` with
/// `d` having no small square factors.
pub fn root_of_irreducible(g: &UniPoly) -> (Arc<NumberField>, Scalar) {
    let z = primitive_integer(&g.rational_coeffs().expect("rational polynomial"));
    let e = z.len() - 1;
    assert!(e >= 2, "root field of a linear polynomial is Q");
    let a = z[e].clone();
    if e == 2 {
        let (c, b) = (&z[0], &z[1]);
        let disc: BigInt = b * b - BigInt::from(4) * &a * c;
        let (sq, d) = split_square(&disc);
        assert!(
            !(d.is_one()),
            "quadratic with square discriminant is reducible"
        );
        let field = NumberField::from_irreducible(vec![-d, BigInt::zero(), BigInt::one()]);
        let u = field.generator();
        let two_a = Rational::from(BigInt::from(2) * &a);
        let root = (Scalar::Rat(Rational::from(-b.clone()))
            + &u * &Scalar::Rat(Rational::from(sq)))
            * Scalar::Rat(two_a.recip());
        return (field, root);
    }
    // m(u) = a^{e-1} g(u / a), root = u / a
    let mut m = Vec::with_capacity(e + 1);
    for (i, c) in z.iter().enumerate() {
        if i == e {
            m.push(BigInt::one());
        } else {
            m.push(c * a.pow((e - 1 - i) as u32));
        }
    }
    let field = NumberField::from_irreducible(m);
    let root = &field.generator() * &Scalar::Rat(Rational::from(a).recip());
    (field, root)
}

/// `n = sign * s^2 * d` with the small square factors of `|n|` moved into `s`.
/// Returns `(s, sign * d)`.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let sign = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut d = n.abs();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &p * &p <= d && p < limit {
        let p2 = &p * &p;
        while (&d % &p2).is_zero() {
            d /= &p2;
            s *= &p;
        }
        p += 1;
    }
    let r = BigInt::from_biguint(Sign::Plus, d.magnitude().sqrt());
    if &r * &r == d {
        s *= &r;
        d = BigInt::one();
    }
    (s, sign * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extend_field_examples() {
        let k = extend_field(&UniPoly::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(
            extend_field(&UniPoly::from_ints(&[-2, 0, 1]))
                .unwrap()
                .degree(),
            2
        );
        assert_eq!(
            extend_field(&UniPoly::from_ints(&[-1, 0, 1])),
            Err(Error::ReducibleMinpoly {
                factor: "u - 1".into()
            })
        );
    }

    #[test]
    fn quadratic_roots_are_canonical() {
        // t^2 - t + 1 has roots (1 ± √-3)/2
        let g = UniPoly::from_ints(&[1, -1, 1]);
        let (k, r) = root_of_irreducible(&g);
        assert_eq!(k.minpoly_string(), "u^2 + 3");
        assert!(g.eval(&r).is_zero());
        // 3t^2 - 24 = 3(t^2 - 8) has root 2√2
        let (k, r) = root_of_irreducible(&UniPoly::from_ints(&[-24, 0, 3]));
        assert_eq!(k.minpoly_string(), "u^2 - 2");
        assert_eq!(r, &k.generator() * &Scalar::from_int(2));
    }

    #[test]
    fn higher_degree_roots() {
        let g = UniPoly::from_ints(&[1, 0, 0, 2]); // 2t^3 + 1
        let (k, r) = root_of_irreducible(&g);
        assert_eq!(k.degree(), 3);
        assert!(g.eval(&r).is_zero());
    }
}
