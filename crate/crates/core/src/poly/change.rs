use crate::error::{Error, Result};
use crate::poly::map::PolynomialMap;
use crate::poly::multipoly::MultiPoly;
use crate::poly::scalar::Scalar;
use crate::poly::univariate::UniPoly;

pub type Matrix = Vec<Vec<Scalar>>;

/// Invertible linear substitution `X ↦ A X`.
///
/// Forms are pulled back (`P ↦ P(A X)`) while points and maps are pushed
/// forward by `A^{-1}`, so `apply(P)` evaluated at `apply_to_point(x)` equals
/// `P(x)` and compositions with maps are preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    matrix: Matrix,
    inverse: Matrix,
}

impl LinearChange {
    pub fn new(matrix: Matrix) -> Result<LinearChange> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("linear change must be square".into()));
        }
        let inverse = invert(&matrix).ok_or(Error::SingularMatrix)?;
        Ok(LinearChange { matrix, inverse })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<LinearChange> {
        LinearChange::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> LinearChange {
        let m: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        LinearChange {
            matrix: m.clone(),
            inverse: m,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `P(A X)`.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.dim() {
            return Err(Error::ArityMismatch {
                expected: self.dim(),
                found: p.nvars(),
            });
        }
        Ok(p.substitute_linear(&self.matrix))
    }

    /// `A^{-1} f`.
    pub fn apply_to_map(&self, f: &PolynomialMap) -> Result<PolynomialMap> {
        if f.arity() != self.dim() {
            return Err(Error::ArityMismatch {
                expected: self.dim(),
                found: f.arity(),
            });
        }
        let comps = self
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(f.components())
                    .fold(UniPoly::zero(), |acc, (a, c)| &acc + &c.scale(a))
            })
            .collect();
        PolynomialMap::new(comps)
    }

    /// `A^{-1} x`.
    pub fn apply_to_point(&self, x: &[Scalar]) -> Vec<Scalar> {
        mat_vec(&self.inverse, x)
    }
}

pub fn mat_vec(m: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// Gauss–Jordan inverse; `None` for singular input.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let inv = a[col][col].inv();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let sub = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &sub;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right kernel of `rows` (vectors of length `ncols`), one vector
/// per free column of the reduced row echelon form, in column order.
pub fn kernel_basis(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut a: Matrix = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = a[r][col].inv();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for c in 0..ncols {
                let sub = &factor * &a[r][c];
                a[i][c] = &a[i][c] - &sub;
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Scalar::zero(); ncols];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::map::compose_with_map;
    use crate::poly::parse::parse_poly_default;

    fn p(s: &str) -> MultiPoly {
        parse_poly_default(s, 3).unwrap()
    }

    #[test]
    fn identity_and_swap() {
        let f = p("X0^2 + 3*X1*X2");
        assert_eq!(LinearChange::identity(3).apply(&f).unwrap(), f);
        let swap = LinearChange::from_ints(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(swap.apply(&p("X0")).unwrap(), p("X1"));
    }

    #[test]
    fn line_to_coordinate_round_trip() {
        let b = 5;
        let line = p("5*X0 + X1");
        let t = LinearChange::from_ints(&[vec![1, 0, 0], vec![-b, 1, 0], vec![0, 0, 1]]).unwrap();
        let moved = t.apply(&line).unwrap();
        assert_eq!(moved, p("X1"));
        assert_eq!(t.inverse().apply(&moved).unwrap(), line);
    }

    #[test]
    fn kernels() {
        let rows = vec![vec![
            Scalar::from_int(1),
            Scalar::from_int(1),
            Scalar::from_int(-2),
        ]];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&rows, v)[0].is_zero());
        }
        assert!(kernel_basis(&[vec![Scalar::one()]], 1).is_empty());
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            LinearChange::from_ints(&[vec![1, 2], vec![2, 4]]),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn compositions_preserved() {
        let t = LinearChange::from_ints(&[vec![1, 2, 0], vec![0, 1, -1], vec![3, 0, 1]]).unwrap();
        let f = PolynomialMap::affine_line(
            &[Scalar::one(), Scalar::zero(), Scalar::from_int(2)],
            &[Scalar::from_int(-1), Scalar::one(), Scalar::zero()],
        )
        .unwrap();
        let d = p("X0^2 - X1*X2 + X2^2");
        let before = compose_with_map(&d, &f).unwrap();
        let after = compose_with_map(&t.apply(&d).unwrap(), &t.apply_to_map(&f).unwrap()).unwrap();
        assert_eq!(before, after);
    }
}
