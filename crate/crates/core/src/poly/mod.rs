//! Exact coefficient fields and polynomial arithmetic.

mod change;
mod factor;
mod field;
mod map;
mod multipoly;
mod parse;
mod scalar;
mod univariate;

pub use change::{invert, kernel_basis, mat_vec, LinearChange, Matrix};
pub use factor::{factor_over_q, primitive_integer, Factorization};
pub use field::{extend_field, root_of_irreducible};
pub use map::{compose_with_map, PolynomialMap};
pub use multipoly::{
    default_var_names, determinant, equalize_degrees, hessian_det, Monomial, MultiPoly,
};
pub use parse::{parse_poly, parse_poly_default, parse_poly_in_field, parse_scalar};
pub use scalar::{format_rational, AlgElem, NumberField, Rational, Scalar};
pub use univariate::{resultant, scalar_determinant, sylvester_matrix, UniPoly};
