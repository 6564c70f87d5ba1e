use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{Engine, Vector};
use super::QuotientRing;
use crate::algebra::{MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};

/// An ideal of a quotient ring `R = k[x]/I` (or of `k[x]` when `I = 0`).
///
/// Generators are stored as normal forms modulo `I`. The Gröbner basis is
/// computed lazily for the lifted ideal `J + I` in the ambient ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<QuotientRing>,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<Vec<Vector>>>,
}

impl Ideal {
    /// Panics if a generator lives outside the ambient ring of `ring`.
    pub fn new(ring: &Arc<QuotientRing>, gens: Vec<Polynomial>) -> Ideal {
        let gens = gens
            .iter()
            .map(|g| {
                assert!(g.ring().same_as(ring.ambient()), "generator from a different ring");
                ring.reduce(g)
            })
            .filter(|g| !g.is_zero())
            .collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: Arc::new(OnceLock::new()),
        }
    }

    pub fn try_new(ring: &Arc<QuotientRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| !g.ring().same_as(ring.ambient())) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal::new(ring, gens))
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<QuotientRing>) -> Ideal {
        Ideal::new(ring, vec![ring.ambient().one()])
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        self.ring.ambient()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn engine(&self) -> Engine<'_> {
        Engine::for_ideal(self.ring.ambient())
    }

    pub(crate) fn lifted_vectors(&self) -> &[Vector] {
        self.gb.get_or_init(|| {
            let e = self.engine();
            let mut gens: Vec<Vector> = self.gens.iter().map(|g| e.from_poly(g)).collect();
            gens.extend(self.ring.basis_vectors().iter().cloned());
            e.groebner(gens)
        })
    }

    /// Reduced Gröbner basis of the lifted ideal `J + I`.
    pub fn lifted_basis(&self) -> Vec<Polynomial> {
        let e = self.engine();
        self.lifted_vectors().iter().map(|v| e.to_poly(v)).collect()
    }

    /// Canonical basis in `R`: the elements of the lifted reduced basis
    /// whose leading monomial is not a leading monomial of `I`.
    pub fn basis(&self) -> Vec<Polynomial> {
        let lt_i: Vec<_> = self
            .ring
            .defining_basis()
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect();
        self.lifted_basis()
            .into_iter()
            .filter(|g| {
                let lm = g.leading_monomial().expect("nonzero");
                !lt_i.iter().any(|m| m.divides(lm))
            })
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.lifted_vectors().first().is_some_and(|v| v[0].mon.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.ring().same_as(self.ring.ambient()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_ideal(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Unique remainder of `f` modulo `J + I`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let e = self.engine();
        Ok(e.to_poly(&e.normal_form(e.from_poly(f), self.lifted_vectors())))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Division by the lifted basis: `f = sum q_i g_i + r`.
    pub fn divide(&self, f: &Polynomial) -> Result<(Vec<Polynomial>, Polynomial)> {
        self.check(f)?;
        Ok(self.engine().divide(f, self.lifted_vectors()))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.check_ideal(other)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ok(Ideal::new(&self.ring, dedup(&self.ring, gens)))
    }

    /// `J^s`; `J^0 = (1)`.
    pub fn power(&self, s: i64) -> Result<Ideal> {
        if s < 0 {
            return Err(Error::NegativeExponent(s));
        }
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..s {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Adds `extra` leading variables `_t0, ...` and an order eliminating
    /// them; returns the ring and the embedding of the ambient variables.
    fn extended(&self, extra: usize) -> (Arc<PolyRing>, Vec<usize>) {
        let a = self.ring.ambient();
        let mut vars: Vec<String> = (0..extra).map(|i| format!("_t{i}")).collect();
        vars.extend(a.vars().iter().cloned());
        let ring = PolyRing::new(a.field(), vars, MonomialOrder::Elimination(extra));
        let map = (0..a.nvars()).map(|i| i + extra).collect();
        (ring, map)
    }

    /// Elements of a Gröbner basis in the extended ring that are free of
    /// the first `extra` variables, mapped back to the ambient ring.
    fn contract(&self, ring: &Arc<PolyRing>, extra: usize, gens: Vec<Polynomial>) -> Vec<Polynomial> {
        let e = Engine::for_ideal(ring);
        let basis = e.groebner(gens.iter().map(|g| e.from_poly(g)).collect());
        let a = self.ring.ambient();
        let back: Vec<usize> = (0..ring.nvars()).map(|i| i.saturating_sub(extra)).collect();
        basis
            .iter()
            .map(|v| e.to_poly(v))
            .filter(|p| p.terms().iter().all(|(m, _)| m.partial_degree(0..extra) == 0))
            .map(|p| p.map_into(a, &back))
            .collect()
    }

    /// `J ∩ K`, eliminating `t` from `tJ + (1 - t)K`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let (ring, map) = self.extended(1);
        let t = ring.var(0);
        let one_minus_t = &ring.one() - &t;
        let mut gens = Vec::new();
        for g in self.lifted_basis() {
            gens.push(&t * &g.map_into(&ring, &map));
        }
        for g in other.lifted_basis() {
            gens.push(&one_minus_t * &g.map_into(&ring, &map));
        }
        Ok(Ideal::new(&self.ring, self.contract(&ring, 1, gens)))
    }

    pub fn intersect_all(ideals: &[Ideal]) -> Result<Ideal> {
        let (first, rest) = ideals
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("intersection of an empty list".into()))?;
        rest.iter().try_fold(first.clone(), |acc, j| acc.intersect(j))
    }

    /// `(J : f)`, computed in the ambient ring as `((J + I) ∩ (f)) / f`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Ideal> {
        self.check(f)?;
        let f = self.ring.reduce(f);
        if self.contains(&f)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let (ring, map) = self.extended(1);
        let t = ring.var(0);
        let mut gens: Vec<Polynomial> = self
            .lifted_basis()
            .iter()
            .map(|g| &t * &g.map_into(&ring, &map))
            .collect();
        gens.push(&(&ring.one() - &t) * &f.map_into(&ring, &map));
        let meet = self.contract(&ring, 1, gens);
        let e = self.engine();
        let divisor = [e.from_poly(&f)];
        let mut quotients = Vec::with_capacity(meet.len());
        for h in meet {
            let (mut q, r) = e.divide(&h, &divisor);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            quotients.push(q.pop().expect("one divisor"));
        }
        Ok(Ideal::new(&self.ring, quotients))
    }

    /// `(J : K)`, intersecting `(J : g)` over the generators of `K`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.gens {
            let q = self.quotient_by(g)?;
            acc = acc.intersect(&q)?;
        }
        Ok(acc)
    }

    /// `f ∈ √J` via Rabinowitsch: `1 ∈ J + I + (1 - t f)`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        let (ring, map) = self.extended(1);
        let e = Engine::for_ideal(&ring);
        let mut gens: Vec<Vector> = self.lifted_basis().iter().map(|g| e.from_poly(&g.map_into(&ring, &map))).collect();
        let tf = &ring.var(0) * &f.map_into(&ring, &map);
        gens.push(e.from_poly(&(&ring.one() - &tf)));
        let basis = e.groebner(gens);
        Ok(basis.first().is_some_and(|v| v[0].mon.is_one()))
    }

    /// `J ∩ k[keep]`, for ideals of a polynomial ring.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        if !self.ring.is_polynomial_ring() {
            return Err(Error::QuotientUnsupported("elimination"));
        }
        let a = self.ring.ambient();
        let n = a.nvars();
        if let Some(&bad) = keep.iter().find(|&&i| i >= n) {
            return Err(Error::VariableOutOfRange { index: bad, nvars: n });
        }
        let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let kept: Vec<usize> = (0..n).filter(|i| keep.contains(i)).collect();
        // Permute so the eliminated variables come first.
        let mut perm = vec![0; n];
        let mut vars = Vec::with_capacity(n);
        for (pos, &i) in drop.iter().chain(kept.iter()).enumerate() {
            perm[i] = pos;
            vars.push(a.vars()[i].clone());
        }
        let ring = PolyRing::new(a.field(), vars, MonomialOrder::Elimination(drop.len()));
        let e = Engine::for_ideal(&ring);
        let basis = e.groebner(self.gens.iter().map(|g| e.from_poly(&g.map_into(&ring, &perm))).collect());
        let mut inverse = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let gens = basis
            .iter()
            .map(|v| e.to_poly(v))
            .filter(|p| p.terms().iter().all(|(m, _)| m.partial_degree(0..drop.len()) == 0))
            .map(|p| p.map_into(a, &inverse))
            .collect();
        Ok(Ideal::new(&self.ring, gens))
    }

    /// The same ideal over a ring that differs only in its monomial order.
    pub fn reorder(&self, ring: &Arc<QuotientRing>) -> Ideal {
        Ideal::new(ring, self.gens.iter().map(|g| g.reorder(ring.ambient())).collect())
    }
}

fn dedup(ring: &Arc<QuotientRing>, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in gens {
        let g = ring.reduce(&g).monic();
        if !g.is_zero() && seen.insert(g.clone()) {
            out.push(g);
        }
    }
    out
}

impl PartialEq for Ideal {
    /// Equality of ideals (mutual containment), not of generator lists.
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = self.basis();
        if basis.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = basis.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}
