use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{Engine, Vector};
use super::Ideal;
use crate::algebra::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

/// Krull dimension; the unit ideal has empty spectrum and no dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    Empty,
    Finite(usize),
}

impl Dimension {
    pub fn value(self) -> Result<usize> {
        match self {
            Dimension::Finite(d) => Ok(d),
            Dimension::Empty => Err(Error::UnitIdeal),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "empty"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `R = k[x]/I`, stored as the ambient ring plus the reduced Gröbner basis
/// of `I`. A polynomial ring is the case `I = 0`.
#[derive(Debug)]
pub struct QuotientRing {
    ambient: Arc<PolyRing>,
    defining: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    basis_vectors: Vec<Vector>,
    dim: OnceLock<Dimension>,
}

impl QuotientRing {
    pub fn new(ambient: &Arc<PolyRing>, defining: Vec<Polynomial>) -> Result<Arc<QuotientRing>> {
        if defining.iter().any(|f| !f.ring().same_as(ambient)) {
            return Err(Error::RingMismatch);
        }
        let engine = Engine::for_ideal(ambient);
        let basis_vectors = engine.groebner(defining.iter().map(|f| engine.from_poly(f)).collect());
        let basis = basis_vectors.iter().map(|v| engine.to_poly(v)).collect();
        Ok(Arc::new(QuotientRing {
            ambient: ambient.clone(),
            defining,
            basis,
            basis_vectors,
            dim: OnceLock::new(),
        }))
    }

    pub fn polynomial(ambient: &Arc<PolyRing>) -> Arc<QuotientRing> {
        QuotientRing::new(ambient, Vec::new()).expect("no generators")
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn defining_generators(&self) -> &[Polynomial] {
        &self.defining
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn defining_basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub(crate) fn basis_vectors(&self) -> &[Vector] {
        &self.basis_vectors
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.basis.first().is_some_and(Polynomial::is_unit)
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn same_as(&self, other: &QuotientRing) -> bool {
        std::ptr::eq(self, other) || (self.ambient.same_as(&other.ambient) && self.basis == other.basis)
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.basis.is_empty() {
            return f.clone();
        }
        let e = Engine::for_ideal(&self.ambient);
        e.to_poly(&e.normal_form(e.from_poly(f), &self.basis_vectors))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Ok(self.reduce(&self.ambient.parse(text)?))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.basis.iter().all(Polynomial::is_homogeneous)
    }

    pub fn ideal(self: &Arc<Self>, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(self, gens)
    }

    pub fn parse_ideal(self: &Arc<Self>, gens: &[&str]) -> Result<Ideal> {
        let gens = gens.iter().map(|g| self.ambient.parse(g)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self, gens))
    }

    /// The irrelevant ideal `(x_1, ..., x_n)`.
    pub fn maximal_ideal(self: &Arc<Self>) -> Ideal {
        let gens = (0..self.nvars()).map(|i| self.ambient.var(i)).collect();
        Ideal::new(self, gens)
    }

    /// Krull dimension, from maximal independent sets of variables modulo
    /// the leading-term ideal.
    pub fn krull_dimension(&self) -> Dimension {
        *self.dim.get_or_init(|| {
            if self.is_zero_ring() {
                return Dimension::Empty;
            }
            let leading: Vec<u64> = self
                .basis
                .iter()
                .map(|g| {
                    g.leading_monomial()
                        .expect("nonzero")
                        .support()
                        .fold(0u64, |m, i| m | (1 << i))
                })
                .collect();
            Dimension::Finite(max_independent_set(self.nvars(), &leading))
        })
    }

    /// Monomials outside the leading-term ideal, when there are finitely
    /// many (a `k`-basis of an artinian ring).
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.nvars();
        let leading: Vec<&Monomial> = self.basis.iter().map(|g| g.leading_monomial().expect("nonzero")).collect();
        let mut bound = vec![u32::MAX; n];
        for m in &leading {
            if let Some((i, e)) = m.pure_power() {
                bound[i] = bound[i].min(e);
            } else if m.is_one() {
                return Some(Vec::new());
            }
        }
        if bound.contains(&u32::MAX) {
            return None;
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial::from_exponents(&exps);
            if !leading.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            // odometer over the box
            let mut i = 0;
            loop {
                if i == n {
                    return Some(out);
                }
                exps[i] += 1;
                if exps[i] < bound[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// `dim_k R`, when finite.
    pub fn vector_space_dimension(&self) -> Option<usize> {
        self.standard_monomials().map(|v| v.len())
    }

    /// Notes about characteristic effects, e.g. a defining exponent that
    /// the characteristic divides (derivatives lose terms).
    pub fn characteristic_notes(&self) -> Vec<String> {
        let p = self.ambient.field().characteristic();
        if p == 0 {
            return Vec::new();
        }
        let mut notes = Vec::new();
        for f in &self.defining {
            for (m, _) in f.terms() {
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 && e % p == 0 {
                        notes.push(format!(
                            "characteristic {p} divides the exponent of {} in {}; differentials differ from characteristic zero",
                            self.ambient.vars()[i],
                            f
                        ));
                    }
                }
            }
        }
        notes.sort();
        notes.dedup();
        notes
    }
}

fn max_independent_set(n: usize, leading: &[u64]) -> usize {
    // S is independent iff no leading monomial is supported inside S.
    let mut best = 0;
    for set in 0u64..(1 << n) {
        let size = set.count_ones() as usize;
        if size > best && leading.iter().all(|&m| m & !set != 0) {
            best = size;
        }
    }
    best
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ambient.field(), self.ambient.vars().join(","))?;
        if !self.basis.is_empty() {
            let gens: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, MonomialOrder};

    fn ring(field: Field, vars: &[&str], gens: &[&str]) -> Arc<QuotientRing> {
        let a = PolyRing::new(field, vars.iter().copied(), MonomialOrder::GrevLex);
        let g = gens.iter().map(|s| a.parse(s).unwrap()).collect();
        QuotientRing::new(&a, g).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(ring(Field::Rational, &["x", "y"], &[]).krull_dimension(), Dimension::Finite(2));
        assert_eq!(ring(Field::Rational, &["x", "y"], &["x^5", "x*y"]).krull_dimension(), Dimension::Finite(1));
        let f13 = Field::prime(13).unwrap();
        assert_eq!(
            ring(f13, &["x", "y", "z"], &["x*y", "x^5 - x*z^4"]).krull_dimension(),
            Dimension::Finite(2)
        );
        let unit = ring(Field::Rational, &["x"], &["x", "x - 1"]);
        assert_eq!(unit.krull_dimension(), Dimension::Empty);
        assert!(unit.krull_dimension().value().is_err());
    }

    #[test]
    fn char_notes() {
        let r = ring(Field::prime(5).unwrap(), &["x", "y"], &["x^5", "x*y"]);
        assert_eq!(r.characteristic_notes().len(), 1);
        assert!(ring(Field::Rational, &["x"], &["x^5"]).characteristic_notes().is_empty());
    }
}
