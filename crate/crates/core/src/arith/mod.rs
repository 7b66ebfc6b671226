//! Exact arithmetic: rationals and prime fields, dense and sparse linear
//! algebra, multivariate polynomials and truncated integer series.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod series;
pub mod sparse;

pub use field::{q, qi, Field, PrimeField, Rationals};
pub use matrix::{Echelon, Matrix};
pub use poly::{poly_linear_dependence, poly_matrix_rank, variables, Monomial, MultiPoly};
