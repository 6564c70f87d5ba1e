//! Arithmetic substrate: coefficient fields, monomials and their orders,
//! sparse polynomials and polynomial matrices.

mod field;
mod matrix;
mod monomial;
mod order;
mod poly;

pub use field::{Field, Scalar};
pub use matrix::PolyMatrix;
pub(crate) use matrix::subsets;
pub use monomial::Monomial;
pub use order::{ModuleOrder, MonomialOrder};
pub use poly::{poly_arith, PolyOp, PolyRing, Polynomial};
