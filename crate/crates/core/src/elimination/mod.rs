//! Ideals, dimension of affine cones, resultants and degeneracy loci.

mod groebner;
mod solve;

pub use groebner::{compute_groebner, GroebnerBasis, MonomialOrder, DEFAULT_BUDGET};
pub use solve::{projective_points, PointSet};

use crate::error::{Error, Result};
use crate::poly::{sylvester_matrix, Monomial, MultiPoly, Scalar};

/// A nonempty list of generators in a common polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(generators: Vec<MultiPoly>) -> Result<Ideal> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidInput("ideal needs at least one generator".into()))?;
        let n = first.nvars();
        if let Some(g) = generators.iter().find(|g| g.nvars() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                found: g.nvars(),
            });
        }
        Ok(Ideal { generators })
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.generators[0].nvars()
    }

    /// `self + ⟨extra⟩`.
    pub fn extended(&self, extra: &[MultiPoly]) -> Result<Ideal> {
        let mut g = self.generators.clone();
        g.extend_from_slice(extra);
        Ideal::new(g)
    }

    pub fn groebner_basis(&self, order: MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
        compute_groebner(&self.generators, order, budget)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

/// Krull dimension of the cone `V(I)` in affine `(N+1)`-space; `-1` for the
/// unit ideal.
pub fn cone_dimension(ideal: &Ideal, budget: u64) -> Result<i64> {
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    let gb = ideal.groebner_basis(MonomialOrder::DegRevLex, budget)?;
    Ok(dimension_from_leading(
        gb.leading_monomials(),
        ideal.nvars(),
    ))
}

/// Largest set of variables containing the support of no leading monomial.
pub fn dimension_from_leading(leading: &[Monomial], nvars: usize) -> i64 {
    if leading.iter().any(|m| m.degree() == 0) {
        return -1;
    }
    let supports: Vec<u64> = leading
        .iter()
        .map(|m| {
            m.exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let mut best = 0;
    for set in 0u64..(1 << nvars) {
        let size = set.count_ones() as i64;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    best
}

/// Sylvester resultant of `f` and `g` with respect to the variable `var`.
pub fn resultant_in_var(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if f.nvars() != g.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: g.nvars(),
        });
    }
    let n = f.nvars();
    if var >= n {
        return Err(Error::InvalidInput(format!(
            "variable index {var} out of range"
        )));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(MultiPoly::zero(n));
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    match (fc.len() - 1, gc.len() - 1) {
        (0, 0) => Err(Error::InvalidInput(
            "resultant: both polynomials are constant in the variable".into(),
        )),
        (0, e) => Ok(fc[0].pow(e as u32)),
        (d, 0) => Ok(gc[0].pow(d as u32)),
        _ => Ok(bareiss(sylvester_matrix(&fc, &gc, MultiPoly::zero(n)), n)),
    }
}

/// Fraction-free determinant.
fn bareiss(mut m: Vec<Vec<MultiPoly>>, nvars: usize) -> MultiPoly {
    let size = m.len();
    let mut negate = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..size.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn ambient_dimension(ambient: Option<&Ideal>, nvars: usize, budget: u64) -> Result<i64> {
    match ambient {
        Some(a) => cone_dimension(a, budget),
        None => Ok(nvars as i64),
    }
}

fn with_ambient(polys: &[MultiPoly], ambient: Option<&Ideal>) -> Result<Ideal> {
    match ambient {
        Some(a) => a.extended(polys),
        None => Ideal::new(polys.to_vec()),
    }
}

/// Whether the cone over `V(polys) ∩ X` has codimension `#polys` in the cone
/// over `X`. Every component of a cut by `r` forms has codimension at most `r`,
/// so equality of the maximal dimension forces it for all components.
pub fn check_proper_intersection(
    polys: &[MultiPoly],
    ambient: Option<&Ideal>,
    budget: u64,
) -> Result<bool> {
    let first = polys
        .first()
        .ok_or_else(|| Error::InvalidInput("no polynomials given".into()))?;
    let base = ambient_dimension(ambient, first.nvars(), budget)?;
    if polys.len() as i64 > base {
        return Err(Error::InvalidInput(format!(
            "{} forms cannot cut a cone of dimension {base} properly",
            polys.len()
        )));
    }
    let cut = cone_dimension(&with_ambient(polys, ambient)?, budget)?;
    Ok(cut == base - polys.len() as i64)
}

/// The locus `X ∩ {P_i = c_i P_1, i ≥ 2}` containing the image of any map with
/// every `P_i ∘ f` constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyVariety {
    pub ideal: Ideal,
    pub cone_dimension: i64,
    /// Codimension in the ambient (or in projective space without one).
    pub codimension: i64,
}

pub fn degeneracy_variety(
    polys: &[MultiPoly],
    ratios: &[Scalar],
    ambient: Option<&Ideal>,
    budget: u64,
) -> Result<DegeneracyVariety> {
    if polys.len() < 2 {
        return Err(Error::InvalidInput(
            "degeneracy variety needs at least two hypersurfaces".into(),
        ));
    }
    if ratios.len() != polys.len() - 1 {
        return Err(Error::ArityMismatch {
            expected: polys.len() - 1,
            found: ratios.len(),
        });
    }
    if ratios.iter().any(Scalar::is_zero) {
        return Err(Error::InvalidInput("ratios must be nonzero".into()));
    }
    let d = polys[0].homogeneous_degree();
    if d.is_none() || polys.iter().any(|p| p.homogeneous_degree() != d) {
        return Err(Error::InvalidInput(
            "polynomials must be homogeneous of one common degree".into(),
        ));
    }
    let gens: Vec<MultiPoly> = polys[1..]
        .iter()
        .zip(ratios)
        .map(|(p, c)| p - &polys[0].scale(c))
        .collect();
    let ideal = with_ambient(&gens, ambient)?;
    let dim = cone_dimension(&ideal, budget)?;
    let base = ambient_dimension(ambient, polys[0].nvars(), budget)?;
    Ok(DegeneracyVariety {
        ideal,
        cone_dimension: dim,
        codimension: base - dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly_default, resultant, UniPoly};

    fn p(s: &str) -> MultiPoly {
        parse_poly_default(s, 3).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn dim(gens: &[&str]) -> i64 {
        cone_dimension(&ideal(gens), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn cone_dimensions() {
        assert_eq!(dim(&["X1", "X2"]), 1);
        assert_eq!(dim(&["X1 - X2"]), 2);
        assert_eq!(dim(&["X0", "X1", "X2"]), 0);
        assert_eq!(dim(&["X0", "1"]), -1);
        assert_eq!(dim(&["X0^2 + X1^2 - X2^2", "X0", "X1", "X2"]), 0);
        assert!(matches!(
            cone_dimension(&ideal(&["X0 + 1"]), DEFAULT_BUDGET),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn staircase_dimension_oracle() {
        // leading monomials X0*X1, X2^2: {X0, X2}? no, X2 is blocked; {X0} or {X1}
        let lm = [Monomial::new(vec![1, 1, 0]), Monomial::new(vec![0, 0, 2])];
        assert_eq!(dimension_from_leading(&lm, 3), 1);
        assert_eq!(dimension_from_leading(&[], 4), 4);
    }

    #[test]
    fn multivariate_resultants() {
        // res_z(z - a, z - b) in variables (a, b, z)
        let r = resultant_in_var(&p("X2 - X0"), &p("X2 - X1"), 2).unwrap();
        assert_eq!(r, p("X0 - X1"));
        let f = p("X2^2 - 2*X0^2");
        assert!(resultant_in_var(&f, &f, 2).unwrap().is_zero());
        // res(z^2 - 2, z - 1) = -1 with constants
        let r = resultant_in_var(&p("X2^2 - 2"), &p("X2 - 1"), 2).unwrap();
        assert_eq!(r, p("-1"));
        assert!(resultant_in_var(&p("X0"), &p("X1"), 2).is_err());
    }

    #[test]
    fn multivariate_resultant_agrees_with_specialization() {
        let f = p("X2^3 + X0*X2 - X1^2");
        let g = p("X2^2 - X0*X1 + 3");
        let r = resultant_in_var(&f, &g, 2).unwrap();
        for (a, b) in [(1, 2), (-3, 5), (0, 7)] {
            let fa = UniPoly::from_ints(&[-b * b, a, 0, 1]);
            let ga = UniPoly::from_ints(&[3 - a * b, 0, 1]);
            let expect = resultant(&fa, &ga).unwrap();
            let got = r
                .evaluate(&[Scalar::from_int(a), Scalar::from_int(b), Scalar::zero()])
                .unwrap();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn proper_intersections() {
        let run = |g: &[&str]| {
            let polys: Vec<MultiPoly> = g.iter().map(|s| p(s)).collect();
            check_proper_intersection(&polys, None, DEFAULT_BUDGET).unwrap()
        };
        assert!(run(&["X1", "X2"]));
        assert!(!run(&["X1", "X1^2 + X1*X2"]));
        assert!(run(&["X1 - X0", "X2 - X0"]));
        let quadric = ideal(&["X0*X2 - X1^2"]);
        assert!(check_proper_intersection(&[p("X0")], Some(&quadric), DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn degeneracy_examples() {
        let w = degeneracy_variety(&[p("X1"), p("X2")], &[Scalar::one()], None, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(w.ideal.generators(), &[p("X2 - X1")]);
        assert_eq!((w.cone_dimension, w.codimension), (2, 1));

        let w = degeneracy_variety(
            &[p("X0"), p("X1"), p("X2")],
            &[Scalar::one(), Scalar::one()],
            None,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(w.ideal.generators(), &[p("X1 - X0"), p("X2 - X0")]);
        assert_eq!(w.cone_dimension, 1);

        assert!(degeneracy_variety(&[p("X0")], &[], None, DEFAULT_BUDGET).is_err());
        assert!(
            degeneracy_variety(&[p("X0"), p("X1")], &[Scalar::zero()], None, DEFAULT_BUDGET)
                .is_err()
        );
        assert!(degeneracy_variety(
            &[p("X0"), p("X1^2")],
            &[Scalar::one()],
            None,
            DEFAULT_BUDGET
        )
        .is_err());
    }
}
