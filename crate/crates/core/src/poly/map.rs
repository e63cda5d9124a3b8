use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::multipoly::MultiPoly;
use crate::poly::scalar::{NumberField, Scalar};
use crate::poly::univariate::UniPoly;

/// A map `z ↦ [f_0(z) : … : f_N(z)]` given by polynomial coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolynomialMap {
    comps: Vec<UniPoly>,
}

impl PolynomialMap {
    pub fn new(comps: Vec<UniPoly>) -> Result<PolynomialMap> {
        if comps.iter().all(UniPoly::is_zero) {
            return Err(Error::InvalidInput(
                "all components of the map are zero".into(),
            ));
        }
        Ok(PolynomialMap { comps })
    }

    /// `z ↦ a + z b` for coordinate vectors `a`, `b`.
    pub fn affine_line(a: &[Scalar], b: &[Scalar]) -> Result<PolynomialMap> {
        PolynomialMap::new(
            a.iter()
                .zip(b)
                .map(|(x, y)| UniPoly::new(vec![x.clone(), y.clone()]))
                .collect(),
        )
    }

    pub fn components(&self) -> &[UniPoly] {
        &self.comps
    }

    pub fn arity(&self) -> usize {
        self.comps.len()
    }

    pub fn field(&self) -> Result<Option<Arc<NumberField>>> {
        Scalar::common_field(self.comps.iter().flat_map(|c| c.coeffs()))
    }

    /// Monic gcd of all components.
    pub fn component_gcd(&self) -> UniPoly {
        self.comps.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c))
    }

    /// Components share no root over the algebraic closure.
    pub fn is_reduced(&self) -> bool {
        self.component_gcd().degree() == Some(0)
    }

    /// First pair `(i, j)` whose cross determinant `f_i f_j' - f_j f_i'` is
    /// nonzero; such a pair exists iff the projective map is nonconstant.
    pub fn nonconstant_witness_pair(&self) -> Option<(usize, usize)> {
        let derivs: Vec<UniPoly> = self.comps.iter().map(UniPoly::derivative).collect();
        for i in 0..self.comps.len() {
            for j in i + 1..self.comps.len() {
                let w = &(&self.comps[i] * &derivs[j]) - &(&self.comps[j] * &derivs[i]);
                if !w.is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_nonconstant(&self) -> bool {
        self.nonconstant_witness_pair().is_some()
    }

    pub fn eval(&self, z: &Scalar) -> Vec<Scalar> {
        self.comps.iter().map(|c| c.eval(z)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.comps.iter().map(|c| c.to_string_in("z")).collect()
    }
}

/// Expand `P(f_0(z), …, f_N(z))`.
pub fn compose_with_map(p: &MultiPoly, f: &PolynomialMap) -> Result<UniPoly> {
    if f.arity() != p.nvars() {
        return Err(Error::ArityMismatch {
            expected: p.nvars(),
            found: f.arity(),
        });
    }
    let mut powers: Vec<Vec<UniPoly>> = f
        .components()
        .iter()
        .map(|c| vec![UniPoly::constant(Scalar::one()), c.clone()])
        .collect();
    let mut acc = UniPoly::zero();
    for (m, c) in p.terms() {
        let mut t = UniPoly::constant(c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = &powers[i][powers[i].len() - 1] * &f.components()[i];
                powers[i].push(next);
            }
            t = &t * &powers[i][e as usize];
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_poly, parse_poly_default};

    fn map(strs: &[&str]) -> PolynomialMap {
        PolynomialMap::new(
            strs.iter()
                .map(|s| {
                    let p = parse_poly(s, &["z"]).unwrap();
                    let d = p.degree_in(0).unwrap_or(0) as usize;
                    let coeffs = p.coefficients_in(0);
                    UniPoly::new((0..=d).map(|k| coeffs[k].constant_term()).collect())
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn compose_examples() {
        let conic = parse_poly_default("X0^2 + X1^2 - X2^2", 3).unwrap();
        assert_eq!(
            compose_with_map(&conic, &map(&["1", "z", "z"])).unwrap(),
            UniPoly::from_ints(&[1])
        );
        let fermat = parse_poly_default("X0^3 + X1^3 + X2^3", 3).unwrap();
        assert_eq!(
            compose_with_map(&fermat, &map(&["z", "-z", "1"])).unwrap(),
            UniPoly::from_ints(&[1])
        );
        let bad = compose_with_map(&conic, &map(&["1", "z"]));
        assert!(matches!(bad, Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn reduced_and_nonconstant() {
        assert!(map(&["1", "1", "z"]).is_reduced());
        assert!(!map(&["z", "z^2", "0"]).is_reduced());
        assert!(map(&["1", "1", "z"]).is_nonconstant());
        assert!(!map(&["z", "2*z", "3*z"]).is_nonconstant());
        assert!(PolynomialMap::new(vec![UniPoly::zero(); 3]).is_err());
    }
}
