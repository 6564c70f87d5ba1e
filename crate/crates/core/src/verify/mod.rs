//! Finite checks of annihilation statements: exponent search over a probe
//! corpus, hypothesis reports, decomposition checks and the example corpus.

mod corpus;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{Ideal, QuotientRing};
use crate::homology::{depth_and_pd, ext_module, FPModule, Subquotient};

pub use corpus::{run_example_corpus, AssertionLine, CorpusReport, Outcome, FIXTURES, VERDICT_PREFIX};

/// Pairs `(M, N)` standing in for "all modules"; a finite sample, so
/// every conclusion drawn from it is a necessary condition only.
#[derive(Clone, Debug)]
pub struct ProbeCorpus {
    ring: Arc<QuotientRing>,
    pairs: Vec<(String, FPModule, FPModule)>,
}

impl ProbeCorpus {
    /// Starts with `(k, k)` and `(R, k)`.
    pub fn standard(ring: &Arc<QuotientRing>) -> ProbeCorpus {
        let k = FPModule::residue_field(ring);
        let r = FPModule::free(ring, 1).with_twists(vec![0]).expect("one generator");
        ProbeCorpus {
            ring: ring.clone(),
            pairs: vec![("(k, k)".into(), k.clone(), k.clone()), ("(R, k)".into(), r, k)],
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn add_pair(&mut self, label: impl Into<String>, m: FPModule, n: FPModule) -> Result<()> {
        if !m.ring().same_as(&self.ring) || !n.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        self.pairs.push((label.into(), m, n));
        Ok(())
    }

    /// Adds `(M, M)`.
    pub fn add_module(&mut self, name: &str, m: FPModule) -> Result<()> {
        self.add_pair(format!("({name}, {name})"), m.clone(), m)
    }

    pub fn pairs(&self) -> &[(String, FPModule, FPModule)] {
        &self.pairs
    }

    /// `Ext^n(M, N)` for every pair, in corpus order.
    pub fn ext_modules(&self, n: usize) -> Result<Vec<Subquotient>> {
        self.pairs.iter().map(|(_, m, t)| ext_module(n, m, t)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AnnihilationExponent {
    Found(usize),
    Exceeded(usize),
}

impl fmt::Display for AnnihilationExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnnihilationExponent::Found(s) => write!(f, "{s}"),
            AnnihilationExponent::Exceeded(s) => write!(f, "exceeded({s})"),
        }
    }
}

pub const DEFAULT_S_MAX: usize = 10;

/// Smallest `s <= s_max` such that every generator of `J^s` kills
/// `Ext^{d+1}(M, N)` for every corpus pair, `d = dim R`.
pub fn annihilation_exponent(
    ring: &Arc<QuotientRing>,
    j: &Ideal,
    corpus: &ProbeCorpus,
    s_max: usize,
) -> Result<AnnihilationExponent> {
    if !j.ring().same_as(ring) || !corpus.ring().same_as(ring) {
        return Err(Error::RingMismatch);
    }
    if j.is_unit() {
        return Err(Error::NotProper);
    }
    let d = ring.krull_dimension().value()?;
    let exts: Vec<Subquotient> = corpus
        .ext_modules(d + 1)?
        .into_iter()
        .filter(|e| !e.is_zero())
        .collect();
    let mut power = Ideal::unit(ring);
    for s in 1..=s_max {
        power = power.product(j)?;
        if kills_all(&power, &exts)? {
            return Ok(AnnihilationExponent::Found(s));
        }
    }
    Ok(AnnihilationExponent::Exceeded(s_max))
}

fn kills_all(j: &Ideal, exts: &[Subquotient]) -> Result<bool> {
    for e in exts {
        for g in j.generators() {
            if !e.acts_zero(g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `target = ∩ components`; primality of the components is recorded, not
/// checked.
#[derive(Clone, Debug)]
pub struct DecompositionClaim {
    pub target: Ideal,
    pub components: Vec<Ideal>,
    pub primality_asserted: bool,
}

impl DecompositionClaim {
    pub fn new(target: Ideal, components: Vec<Ideal>) -> Result<DecompositionClaim> {
        if components.iter().any(|c| !c.ring().same_as(target.ring())) {
            return Err(Error::RingMismatch);
        }
        Ok(DecompositionClaim {
            target,
            components,
            primality_asserted: false,
        })
    }
}

pub fn decomposition_check(claim: &DecompositionClaim) -> Result<bool> {
    if claim.components.is_empty() {
        return Ok(claim.target.is_unit());
    }
    Ideal::intersect_all(&claim.components)?.equals(&claim.target)
}

/// `dim R/p` for each `p`.
pub fn component_dimensions(primes: &[Ideal]) -> Result<Vec<usize>> {
    primes
        .iter()
        .map(|p| {
            let q = QuotientRing::new(p.ambient(), p.lifted_basis())?;
            q.krull_dimension().value()
        })
        .collect()
}

pub const LOCAL_DEPTH_NOTE: &str = "localized depth conditions not checked; hypothesis sampled, not certified";

/// Hypotheses of the half-Cohen–Macaulay annihilation theorem, checked
/// against user-supplied minimal primes.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub decomposition: bool,
    pub component_dims: Vec<usize>,
    pub equidimensional: bool,
    pub dim: usize,
    pub depth: usize,
    /// `2 depth R >= dim R`.
    pub global_depth_condition: bool,
    /// `depth R = dim R`.
    pub cohen_macaulay: bool,
    pub note: &'static str,
}

impl HypothesisReport {
    /// Decomposition, equidimensionality and the global depth condition.
    pub fn passes(&self) -> bool {
        self.decomposition && self.equidimensional && self.global_depth_condition
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.component_dims.iter().map(ToString::to_string).collect();
        writeln!(f, "decomposition: {}", self.decomposition)?;
        writeln!(
            f,
            "equidimensional: {} (dims {})",
            self.equidimensional,
            dims.join(", ")
        )?;
        writeln!(f, "dim: {}, depth: {}", self.dim, self.depth)?;
        writeln!(f, "2 depth >= dim: {}", self.global_depth_condition)?;
        write!(f, "{}", self.note)
    }
}

pub fn theorem2_hypotheses(ring: &Arc<QuotientRing>, claim: &DecompositionClaim, primes: &[Ideal]) -> Result<HypothesisReport> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("empty prime list".into()));
    }
    if primes.iter().any(|p| !p.ring().same_as(ring)) || !claim.target.ring().same_as(ring) {
        return Err(Error::RingMismatch);
    }
    let decomposition = decomposition_check(claim)?;
    let component_dims = component_dimensions(primes)?;
    let equidimensional = component_dims.windows(2).all(|w| w[0] == w[1]);
    let dim = ring.krull_dimension().value()?;
    let (depth, _) = depth_and_pd(ring)?;
    Ok(HypothesisReport {
        decomposition,
        component_dims,
        equidimensional,
        dim,
        depth,
        global_depth_condition: 2 * depth >= dim,
        cohen_macaulay: depth == dim,
        note: LOCAL_DEPTH_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, MonomialOrder, PolyRing};

    fn ring(field: Field, vars: &[&str], rels: &[&str]) -> Arc<QuotientRing> {
        let a = PolyRing::new(field, vars.iter().copied(), MonomialOrder::GrevLex);
        let rels = rels.iter().map(|s| a.parse(s).unwrap()).collect();
        QuotientRing::new(&a, rels).unwrap()
    }

    #[test]
    fn exponent_on_a_cohen_macaulay_ring() {
        let r = ring(Field::Rational, &["x", "y"], &["x^2"]);
        let j = r.parse_ideal(&["x"]).unwrap();
        let s = annihilation_exponent(&r, &j, &ProbeCorpus::standard(&r), DEFAULT_S_MAX).unwrap();
        assert_eq!(s, AnnihilationExponent::Found(1));
    }

    #[test]
    fn exponent_on_a_regular_ring() {
        let r = ring(Field::Rational, &["x", "y"], &[]);
        let j = r.parse_ideal(&["x", "y"]).unwrap();
        let s = annihilation_exponent(&r, &j, &ProbeCorpus::standard(&r), DEFAULT_S_MAX).unwrap();
        assert_eq!(s, AnnihilationExponent::Found(1));
    }

    #[test]
    fn exponent_on_the_first_example() {
        let r = ring(Field::Rational, &["x", "y"], &["x^5", "x*y"]);
        let j = r.parse_ideal(&["x", "y"]).unwrap();
        let mut corpus = ProbeCorpus::standard(&r);
        corpus.add_module("M", FPModule::cyclic(&r.parse_ideal(&["x^3"]).unwrap())).unwrap();
        match annihilation_exponent(&r, &j, &corpus, DEFAULT_S_MAX).unwrap() {
            AnnihilationExponent::Found(s) => assert!(s >= 2),
            AnnihilationExponent::Exceeded(_) => panic!("no exponent found"),
        }
    }

    #[test]
    fn hypotheses_of_two_lines() {
        let r = ring(Field::Rational, &["x", "y"], &["x^2 - y^2"]);
        let primes = vec![r.parse_ideal(&["x - y"]).unwrap(), r.parse_ideal(&["x + y"]).unwrap()];
        let claim = DecompositionClaim::new(Ideal::zero(&r), primes.clone()).unwrap();
        let rep = theorem2_hypotheses(&r, &claim, &primes).unwrap();
        assert!(rep.passes());
        assert_eq!(rep.component_dims, [1, 1]);
        assert!(rep.cohen_macaulay);
    }

    #[test]
    fn decomposition_of_the_isolated_singularity() {
        let r = ring(Field::prime(13).unwrap(), &["x", "y", "z"], &["x*y", "x^5 - x*z^4"]);
        let parts = [&["x"][..], &["x + z", "y"], &["x - z", "y"], &["x + 5*z", "y"], &["x - 5*z", "y"]];
        let primes: Vec<Ideal> = parts.iter().map(|g| r.parse_ideal(g).unwrap()).collect();
        let claim = DecompositionClaim::new(Ideal::zero(&r), primes.clone()).unwrap();
        assert!(decomposition_check(&claim).unwrap());
        let rep = theorem2_hypotheses(&r, &claim, &primes).unwrap();
        assert!(!rep.equidimensional);
        assert_eq!(rep.component_dims, [2, 1, 1, 1, 1]);
        assert_eq!((rep.dim, rep.depth), (2, 1));
    }
}
