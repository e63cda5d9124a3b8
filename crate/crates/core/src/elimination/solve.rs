//! Points of zero-dimensional projective varieties via lex bases in shape position.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compute_groebner, cone_dimension, Ideal, MonomialOrder};
use crate::error::{Error, Result};
use crate::poly::{
    factor_over_q, mat_vec, root_of_irreducible, LinearChange, Monomial, MultiPoly, Scalar, UniPoly,
};

const CHANGE_ATTEMPTS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    /// Coordinates of one point per conjugacy class, with the class size.
    pub points: Vec<(Vec<Scalar>, usize)>,
    /// Degrees of eliminant factors whose points were not enumerated.
    pub unresolved: Vec<usize>,
}

/// Projective points of `V(polys)` over fields of degree at most
/// `max_ext_degree`. `None` when no tried coordinate change puts the ideal in
/// shape position.
pub fn projective_points(
    polys: &[MultiPoly],
    max_ext_degree: usize,
    budget: u64,
) -> Result<Option<PointSet>> {
    let ideal = Ideal::new(polys.to_vec())?;
    if polys.iter().any(|p| !p.is_rational()) {
        return Err(Error::UnsupportedTower(
            "point enumeration needs rational equations".into(),
        ));
    }
    let dim = cone_dimension(&ideal, budget)?;
    if dim > 1 {
        return Err(Error::InvalidInput(
            "the variety has positive dimension".into(),
        ));
    }
    let nv = ideal.nvars();
    if dim <= 0 {
        return Ok(Some(PointSet {
            points: Vec::new(),
            unresolved: Vec::new(),
        }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..CHANGE_ATTEMPTS {
        let matrix: Vec<Vec<i64>> = (0..nv)
            .map(|i| {
                (0..nv)
                    .map(|j| {
                        if i == j {
                            1
                        } else if attempt == 0 {
                            0
                        } else {
                            rng.gen_range(-2..=2)
                        }
                    })
                    .collect()
            })
            .collect();
        let Ok(change) = LinearChange::from_ints(&matrix) else {
            continue;
        };
        if let Some(found) = try_change(polys, &change, max_ext_degree, budget)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn try_change(
    polys: &[MultiPoly],
    change: &LinearChange,
    max_ext: usize,
    budget: u64,
) -> Result<Option<PointSet>> {
    let nv = change.dim();
    let moved = polys
        .iter()
        .map(|p| change.apply(p))
        .collect::<Result<Vec<_>>>()?;
    let mut at_infinity = moved.clone();
    at_infinity.push(MultiPoly::var(nv, 0));
    if cone_dimension(&Ideal::new(at_infinity)?, budget)? > 0 {
        return Ok(None);
    }
    // affine chart Y0 = 1 in the variables Y1..Ym
    let m = nv - 1;
    let mut images = vec![MultiPoly::one(m)];
    images.extend((0..m).map(|i| MultiPoly::var(m, i)));
    let affine: Vec<MultiPoly> = moved.iter().map(|p| p.substitute(&images)).collect();
    let gb = compute_groebner(&affine, MonomialOrder::Lex, budget)?;
    if gb.is_unit() {
        return Ok(Some(PointSet {
            points: Vec::new(),
            unresolved: Vec::new(),
        }));
    }
    let Some((eliminant, coords)) = shape(gb.basis(), m) else {
        return Ok(None);
    };
    let mut points = Vec::new();
    let mut unresolved = Vec::new();
    for (factor, _) in factor_over_q(&eliminant)?.factors {
        let e = factor.degree().unwrap();
        if e > max_ext {
            unresolved.push(e);
            continue;
        }
        let alpha = if e == 1 {
            -(&factor.coeff(0) * &factor.coeff(1).inv())
        } else {
            root_of_irreducible(&factor).1
        };
        let mut y = vec![Scalar::one()];
        y.extend(coords.iter().map(|h| h.eval(&alpha)));
        y.push(alpha);
        let x = mat_vec(change.matrix(), &y);
        let lead = x
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero point")
            .inv();
        points.push((x.iter().map(|c| c * &lead).collect(), e));
    }
    Ok(Some(PointSet { points, unresolved }))
}

/// Splits a reduced lex basis `{Y_i - h_i(Y_m)}, g(Y_m)` into `g` and the `h_i`.
fn shape(basis: &[MultiPoly], m: usize) -> Option<(UniPoly, Vec<UniPoly>)> {
    if basis.len() != m {
        return None;
    }
    let last = m - 1;
    let as_uni = |p: &MultiPoly| -> Option<UniPoly> {
        let d = p.degree_in(last).unwrap_or(0) as usize;
        let mut c = vec![Scalar::zero(); d + 1];
        for (mono, coeff) in p.terms() {
            if mono
                .exps()
                .iter()
                .enumerate()
                .any(|(i, &e)| i != last && e > 0)
            {
                return None;
            }
            c[mono.exps()[last] as usize] = coeff.clone();
        }
        Some(UniPoly::new(c))
    };
    let mut eliminant = None;
    let mut coords: Vec<Option<UniPoly>> = vec![None; last];
    for g in basis {
        if let Some(u) = as_uni(g) {
            eliminant = Some(u);
            continue;
        }
        let i = (0..last).find(|&i| g.coeff(&Monomial::var(m, i)).is_one())?;
        let rest = g - &MultiPoly::var(m, i);
        coords[i] = Some(as_uni(&rest)?.scale(&-Scalar::one()));
    }
    Some((eliminant?, coords.into_iter().collect::<Option<Vec<_>>>()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly_default;

    #[test]
    fn quadric_family_points() {
        let polys: Vec<MultiPoly> = [
            "X0",
            "X0^2 + X1^2 + X2^2 - 2*X3^2",
            "X0^2 + X1^2 + 2*X2^2 - 3*X3^2",
        ]
        .iter()
        .map(|s| parse_poly_default(s, 4).unwrap())
        .collect();
        let found = projective_points(&polys, 2, super::super::DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(found.points.len(), 4);
        for (x, size) in &found.points {
            assert_eq!(*size, 1);
            for p in &polys {
                assert!(p.evaluate(x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn conjugate_points() {
        let polys: Vec<MultiPoly> = ["X2", "X0^2 + X1^2 - X2^2"]
            .iter()
            .map(|s| parse_poly_default(s, 3).unwrap())
            .collect();
        let found = projective_points(&polys, 2, super::super::DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(found.points.len(), 1);
        assert_eq!(found.points[0].1, 2);
        let none = projective_points(&polys, 1, super::super::DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(none.unresolved, vec![2]);
    }
}
