//! Gröbner bases for ideals and submodules over `k[x]` and `k[x]/I`, and
//! the ideal calculus built on them.

pub(crate) mod engine;
mod ideal;
mod module;
mod quotient;

use std::sync::Arc;

pub use ideal::Ideal;
pub use module::{kernel, monomials_of_degree, syzygies, Column, SubmoduleGB};
pub(crate) use module::reduce_column;
pub use quotient::{Dimension, QuotientRing};

use crate::algebra::{PolyRing, Polynomial};
use crate::error::Result;

/// Reduced Gröbner basis of `gens` in the ring's order.
pub fn buchberger(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
    let r = QuotientRing::polynomial(ring);
    let ideal = Ideal::try_new(&r, gens)?;
    ideal.lifted_basis();
    Ok(ideal)
}

pub fn normal_form(f: &Polynomial, ideal: &Ideal) -> Result<Polynomial> {
    ideal.normal_form(f)
}

pub fn eliminate(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    ideal.eliminate(keep)
}

pub fn ideal_intersect(j: &Ideal, k: &Ideal) -> Result<Ideal> {
    j.intersect(k)
}

pub fn ideal_colon(j: &Ideal, k: &Ideal) -> Result<Ideal> {
    j.colon(k)
}

pub fn radical_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.radical_contains(f)
}

pub fn krull_dimension(ring: &QuotientRing) -> Dimension {
    ring.krull_dimension()
}

/// Ideal arithmetic selector.
#[derive(Clone, Debug)]
pub enum IdealOp<'a> {
    Sum(&'a Ideal),
    Product(&'a Ideal),
    Power(i64),
    Equal(&'a Ideal),
}

#[derive(Clone, Debug)]
pub enum IdealOpResult {
    Ideal(Ideal),
    Bool(bool),
}

pub fn ideal_ops(j: &Ideal, op: IdealOp<'_>) -> Result<IdealOpResult> {
    Ok(match op {
        IdealOp::Sum(k) => IdealOpResult::Ideal(j.sum(k)?),
        IdealOp::Product(k) => IdealOpResult::Ideal(j.product(k)?),
        IdealOp::Power(s) => IdealOpResult::Ideal(j.power(s)?),
        IdealOp::Equal(k) => IdealOpResult::Bool(j.equals(k)?),
    })
}
