use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::scalar::{format_rational, Rational, Scalar};

/// Dense univariate polynomial, coefficients in ascending degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> UniPoly {
        UniPoly::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn var() -> UniPoly {
        UniPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn monomial(c: Scalar, k: usize) -> UniPoly {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs
            .iter()
            .map(|c| c.as_rational().cloned())
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::constant(Scalar::one());
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

    /// `self(g(z))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division over the coefficient field.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc_inv = d.lead().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = r.len() - dd;
            let c = &top * &lc_inv;
            for j in 0..dd {
                r[k + j] = &r[k + j] - &(&c * &d.coeffs[j]);
            }
            q[k] = c;
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun's decomposition: `self = c * ∏ a_i^i` with squarefree coprime monic `a_i`.
    /// Returns `(a_i, i)` for nonconstant `a_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.exact_div(&a).unwrap();
        let mut c = fp.exact_div(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            if b.is_constant() {
                break;
            }
            a = b.gcd(&d);
            b = b.exact_div(&a).unwrap();
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            i += 1;
        }
        out
    }

    /// Order of vanishing at `x`.
    pub fn root_multiplicity(&self, x: &Scalar) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = UniPoly::new(vec![-x, Scalar::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            k += 1;
        }
        k
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let (neg, body) = match c {
                Scalar::Rat(q) => {
                    let neg = q < &Rational::from_integer(0.into());
                    let abs = if neg { -q.clone() } else { q.clone() };
                    let body = if mono.is_empty() {
                        format_rational(&abs)
                    } else if abs == Rational::from_integer(1.into()) {
                        mono.clone()
                    } else {
                        format!("{}*{}", format_rational(&abs), mono)
                    };
                    (neg, body)
                }
                Scalar::Alg(_) => {
                    let body = if mono.is_empty() {
                        format!("({c})")
                    } else {
                        format!("({c})*{mono}")
                    };
                    (false, body)
                }
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

/// Determinant of a square scalar matrix by Gaussian elimination over the field.
pub fn scalar_determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = &det * &p;
        let p_inv = p.inv();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &p_inv;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    det
}

/// Sylvester matrix of `f` and `g` with rows of `f`-shifts first; entries are
/// ordered from the highest power downwards.
pub fn sylvester_matrix<T: Clone>(f: &[T], g: &[T], zero: T) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two univariate polynomials over a field as the determinant of
/// their Sylvester matrix. `None` when both are constant.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Option<Scalar> {
    let (df, dg) = (f.degree()?, g.degree()?);
    if df == 0 && dg == 0 {
        return None;
    }
    if df == 0 {
        return Some(f.coeff(0).pow(dg as u32));
    }
    if dg == 0 {
        return Some(g.coeff(0).pow(df as u32));
    }
    Some(scalar_determinant(sylvester_matrix(
        f.coeffs(),
        g.coeffs(),
        Scalar::zero(),
    )))
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_examples() {
        // res(z^2 - 2, z - 1) = -1
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        let g = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(resultant(&f, &g), Some(Scalar::from_int(-1)));
        assert_eq!(resultant(&f, &f), Some(Scalar::zero()));
        assert_eq!(
            resultant(&UniPoly::from_ints(&[3]), &UniPoly::from_ints(&[5])),
            None
        );
    }

    #[test]
    fn resultant_swap_sign() {
        let f = UniPoly::from_ints(&[1, 2, 0, 1]);
        let g = UniPoly::from_ints(&[-3, 0, 5]);
        let a = resultant(&f, &g).unwrap();
        let b = resultant(&g, &f).unwrap();
        // (-1)^(3*2) = 1
        assert_eq!(a, b);
        let h = UniPoly::from_ints(&[2, 1]);
        let c = resultant(&f, &h).unwrap();
        let d = resultant(&h, &f).unwrap();
        assert_eq!(c, -d);
    }

    #[test]
    fn squarefree_decomposition_recovers_powers() {
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[1, 0, 1]);
        let f = &a.pow(3) * &b;
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(b.clone(), 1), (a.clone(), 3)]);
        assert_eq!(f.squarefree_part(), (&a * &b).monic());
        assert_eq!(f.root_multiplicity(&Scalar::one()), 3);
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[1, 0, -1]).to_string(), "-z^2 + 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
