use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::{MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::engine::Engine;
use crate::groebner::QuotientRing;

/// Evidence that `R` is module-finite over `k[theta]`: each variable
/// `x_i` has a Gröbner basis element with leading term `x_i^{m_i}` in an
/// order eliminating the `x` block of `k[x, t]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitenessCertificate {
    /// `(variable, m_i)` per variable of `R`.
    pub pure_powers: Vec<(String, u32)>,
}

impl fmt::Display for FinitenessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pure_powers.iter().map(|(v, m)| format!("{v}^{m}")).collect();
        write!(f, "certified: {}", parts.join(", "))
    }
}

/// A Noether normalization `A = k[t_1..t_d] -> R`, `t_j -> theta_j`.
#[derive(Clone, Debug)]
pub struct NormalizationData {
    ring: Arc<QuotientRing>,
    thetas: Vec<Polynomial>,
    certificate: Arc<OnceLock<Result<FinitenessCertificate>>>,
}

impl NormalizationData {
    /// Requires `thetas.len() == dim R`; `A = k` when the ring is artinian.
    pub fn new(ring: &Arc<QuotientRing>, thetas: Vec<Polynomial>) -> Result<NormalizationData> {
        let dim = ring.krull_dimension();
        match dim.value() {
            Ok(d) if d == thetas.len() => NormalizationData::with_any_length(ring, thetas),
            _ => Err(Error::DimensionMismatch {
                given: thetas.len(),
                dim: dim.to_string(),
            }),
        }
    }

    /// Skips the dimension check (the map `A -> R` need not be injective).
    pub fn with_any_length(ring: &Arc<QuotientRing>, thetas: Vec<Polynomial>) -> Result<NormalizationData> {
        if thetas.iter().any(|t| !t.ring().same_as(ring.ambient())) {
            return Err(Error::RingMismatch);
        }
        Ok(NormalizationData {
            ring: ring.clone(),
            thetas: thetas.iter().map(|t| ring.reduce(t)).collect(),
            certificate: Arc::new(OnceLock::new()),
        })
    }

    /// `A = k`.
    pub fn base_field(ring: &Arc<QuotientRing>) -> NormalizationData {
        NormalizationData::with_any_length(ring, Vec::new()).expect("no parameters")
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn thetas(&self) -> &[Polynomial] {
        &self.thetas
    }

    pub fn is_base_field(&self) -> bool {
        self.thetas.is_empty()
    }

    /// Cached finiteness certificate.
    pub fn certificate(&self) -> Result<&FinitenessCertificate> {
        self.certificate
            .get_or_init(|| normalization_check(&self.ring, &self.thetas))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn require_certified(&self) -> Result<()> {
        self.certificate().map(|_| ())
    }
}

impl fmt::Display for NormalizationData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.thetas.is_empty() {
            return write!(f, "k -> {}", self.ring);
        }
        let t: Vec<String> = self.thetas.iter().map(ToString::to_string).collect();
        write!(f, "k[{}] -> {}", t.join(", "), self.ring)
    }
}

/// Certifies that `R` is module-finite over `k[theta]` using a Gröbner
/// basis of `I + (theta_j - t_j)` in `k[x, t]`, `x` eliminated first.
pub fn normalization_check(ring: &Arc<QuotientRing>, thetas: &[Polynomial]) -> Result<FinitenessCertificate> {
    let a = ring.ambient();
    if thetas.iter().any(|t| !t.ring().same_as(a)) {
        return Err(Error::RingMismatch);
    }
    if ring.is_zero_ring() {
        return Err(Error::UnitIdeal);
    }
    let n = a.nvars();
    let d = thetas.len();
    let mut vars: Vec<String> = a.vars().to_vec();
    vars.extend((0..d).map(|j| format!("_t{j}")));
    let big = PolyRing::new(a.field(), vars, MonomialOrder::Elimination(n));
    let embed: Vec<usize> = (0..n).collect();
    let e = Engine::for_ideal(&big);
    let mut gens: Vec<_> = ring
        .defining_basis()
        .iter()
        .map(|g| e.from_poly(&g.map_into(&big, &embed)))
        .collect();
    for (j, t) in thetas.iter().enumerate() {
        gens.push(e.from_poly(&(&t.map_into(&big, &embed) - &big.var(n + j))));
    }
    let basis = e.groebner(gens);
    let mut pure_powers = Vec::with_capacity(n);
    for i in 0..n {
        let m = basis
            .iter()
            .filter_map(|v| match v[0].mon.pure_power() {
                Some((k, m)) if k == i => Some(m),
                _ => None,
            })
            .min();
        match m {
            Some(m) => pure_powers.push((a.vars()[i].clone(), m)),
            None => return Err(Error::NotFinite(a.vars()[i].clone())),
        }
    }
    Ok(FinitenessCertificate { pure_powers })
}
