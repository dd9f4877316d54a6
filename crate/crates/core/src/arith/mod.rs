//! Coefficient fields, bivariate polynomials and polynomial matrices.

mod field;
mod matrix;
mod parse;
mod poly;

pub use field::{Field, FieldElem, DEFAULT_PRIME};
pub(crate) use field::pow_mod;
pub use matrix::{subsets, Minors, PolyMatrix};
pub use parse::parse_poly;
pub use poly::{poly_arith, Monomial, Operand, Poly, PolyOp};

/// All `k x k` minors of `a`; `Minors::Unit` for `k <= 0`.
pub fn matrix_minors(a: &PolyMatrix, k: i64) -> Minors {
    a.minors(k)
}
