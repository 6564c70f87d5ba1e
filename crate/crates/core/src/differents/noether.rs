use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::NormalizationData;
use crate::algebra::{MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, QuotientRing};
use crate::homology::{ext_module, koszul_homology, FPModule, Subquotient};

/// `R ⊗_A R` as `k[x, x']/(I(x) + I(x') + (theta(x) - theta(x')))`, with
/// the multiplication map `mu : x'_i -> x_i`.
#[derive(Clone, Debug)]
pub struct EnvelopingPresentation {
    base: Arc<QuotientRing>,
    ring: Arc<QuotientRing>,
    mu_images: Vec<Polynomial>,
    kernel: Vec<Polynomial>,
    well_defined: bool,
}

/// Two copies of the variables of `base`; the primed copy is named `xp`
/// (or `x_p`, `x_p2`, ... on a clash). Returns the ring and the positions
/// of the unprimed and primed copies.
fn doubled_ring(base: &PolyRing, primed_first: bool) -> (Arc<PolyRing>, Vec<usize>, Vec<usize>) {
    let n = base.nvars();
    let mut taken: Vec<String> = base.vars().to_vec();
    let mut primed = Vec::with_capacity(n);
    for v in base.vars() {
        let mut candidates = vec![format!("{v}p"), format!("{v}_p")];
        candidates.extend((2..).map(|k| format!("{v}_p{k}")).take(n + 2));
        let name = candidates
            .into_iter()
            .find(|c| !taken.contains(c))
            .expect("finitely many clashes");
        taken.push(name.clone());
        primed.push(name);
    }
    let plain: Vec<String> = base.vars().to_vec();
    let (vars, first, second): (Vec<String>, Vec<usize>, Vec<usize>) = if primed_first {
        (
            primed.into_iter().chain(plain).collect(),
            (n..2 * n).collect(),
            (0..n).collect(),
        )
    } else {
        (
            plain.into_iter().chain(primed).collect(),
            (0..n).collect(),
            (n..2 * n).collect(),
        )
    };
    (PolyRing::new(base.field(), vars, MonomialOrder::GrevLex), first, second)
}

pub fn enveloping(ring: &Arc<QuotientRing>, base: &NormalizationData) -> Result<EnvelopingPresentation> {
    if !base.ring().same_as(ring) {
        return Err(Error::RingMismatch);
    }
    base.require_certified()?;
    let a = ring.ambient();
    let n = a.nvars();
    let (big, x, xp) = doubled_ring(a, false);
    let mut gens = Vec::new();
    for g in ring.defining_basis() {
        gens.push(g.map_into(&big, &x));
        gens.push(g.map_into(&big, &xp));
    }
    for t in base.thetas() {
        gens.push(&t.map_into(&big, &x) - &t.map_into(&big, &xp));
    }
    let env = QuotientRing::new(&big, gens)?;
    let mu_images: Vec<Polynomial> = (0..2 * n).map(|i| a.var(i % n)).collect();
    let mut well_defined = true;
    for g in env.defining_generators() {
        if !ring.reduce(&g.substitute(a, &mu_images)).is_zero() {
            well_defined = false;
        }
    }
    let kernel = (0..n)
        .map(|i| env.reduce(&(&big.var(x[i]) - &big.var(xp[i]))))
        .filter(|p| !p.is_zero())
        .collect();
    Ok(EnvelopingPresentation {
        base: ring.clone(),
        ring: env,
        mu_images,
        kernel,
        well_defined,
    })
}

impl EnvelopingPresentation {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn is_well_defined(&self) -> bool {
        self.well_defined
    }

    /// The nonzero classes of `x_i - x'_i`.
    pub fn kernel_generators(&self) -> &[Polynomial] {
        &self.kernel
    }

    pub fn kernel_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.kernel.clone())
    }

    /// `mu(f)`, reduced in `R`.
    pub fn mu(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same_as(self.ring.ambient()) {
            return Err(Error::RingMismatch);
        }
        Ok(self.base.reduce(&f.substitute(self.base.ambient(), &self.mu_images)))
    }
}

/// `aleph_A(R) = mu((0 : ker mu))`.
pub fn noether_different(ring: &Arc<QuotientRing>, base: &NormalizationData) -> Result<Ideal> {
    let env = enveloping(ring, base)?;
    let ann = Ideal::zero(env.ring()).colon(&env.kernel_ideal())?;
    let gens = ann.generators().iter().map(|g| env.mu(g)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ring, gens))
}

/// `Tor^A_i(R, R)` as Koszul homology of `theta(x) - theta(x')` over
/// `k[x, x']/(I(x) + I(x'))`.
pub fn tor_over_normalization(base: &NormalizationData, i: usize) -> Result<Subquotient> {
    tor_with_variable_order(base, i, false)
}

/// Same computation with the primed copy ordered first; the result is
/// isomorphic to the unswapped one.
pub fn tor_with_variable_order(base: &NormalizationData, i: usize, primed_first: bool) -> Result<Subquotient> {
    base.require_certified()?;
    let ring = base.ring();
    let (big, x, xp) = doubled_ring(ring.ambient(), primed_first);
    let mut gens = Vec::new();
    for g in ring.defining_basis() {
        gens.push(g.map_into(&big, &x));
        gens.push(g.map_into(&big, &xp));
    }
    let doubled = QuotientRing::new(&big, gens)?;
    let seq: Vec<Polynomial> = base
        .thetas()
        .iter()
        .map(|t| &t.map_into(&big, &x) - &t.map_into(&big, &xp))
        .collect();
    koszul_homology(&seq, &doubled, i)
}

/// How the degree-zero derived Noether different relates to `aleph`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum XiStatus {
    /// `Tor^A_i(R, R) = 0` for `i >= 1`, so `xi^0 = aleph`.
    Equal,
    /// Only the inclusion `xi^0 ⊆ aleph` is known.
    Contained,
}

impl fmt::Display for XiStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XiStatus::Equal => write!(f, "xi0 = noether"),
            XiStatus::Contained => write!(f, "xi0 <= noether"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorVanishing {
    /// `(i, Tor_i = 0)` for `1 <= i <= d`.
    pub degrees: Vec<(usize, bool)>,
    pub status: XiStatus,
}

impl TorVanishing {
    pub fn certified(&self) -> bool {
        self.status == XiStatus::Equal
    }
}

/// Checks `Tor^A_i(R, R) = 0` for `1 <= i <= d`; the Koszul complex has
/// length `d`, so higher Tor vanishes automatically.
pub fn tor_vanishing_certifies_equality(ring: &Arc<QuotientRing>, base: &NormalizationData) -> Result<TorVanishing> {
    if !base.ring().same_as(ring) {
        return Err(Error::RingMismatch);
    }
    let d = base.thetas().len();
    let mut degrees = Vec::with_capacity(d);
    for i in 1..=d {
        degrees.push((i, tor_over_normalization(base, i)?.is_zero()));
    }
    let status = if degrees.iter().all(|&(_, z)| z) {
        XiStatus::Equal
    } else {
        XiStatus::Contained
    };
    Ok(TorVanishing { degrees, status })
}

/// A probe `Ext^n(M, N)`.
#[derive(Clone, Debug)]
pub struct Probe {
    pub degree: usize,
    pub source: FPModule,
    pub target: FPModule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Refutation {
    /// `z` acts nontrivially on the probe with this index, so `z ∉ xi^0`.
    Refuted { probe: usize, degree: usize },
    Inconclusive,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::Refuted { probe, degree } => write!(f, "refuted by probe {probe} (Ext^{degree})"),
            Refutation::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Elements of `xi^0` kill `Ext^n` for `n` past the dimension of `A`;
/// a probe on which `z` acts nontrivially refutes membership. Never
/// affirms it.
pub fn derived_different_refute(z: &Polynomial, ring: &Arc<QuotientRing>, probes: &[Probe]) -> Result<Refutation> {
    if !z.ring().same_as(ring.ambient()) {
        return Err(Error::RingMismatch);
    }
    if ring.reduce(z).is_zero() {
        return Ok(Refutation::Inconclusive);
    }
    for (k, p) in probes.iter().enumerate() {
        if !p.source.ring().same_as(ring) || !p.target.ring().same_as(ring) {
            return Err(Error::RingMismatch);
        }
        let e = ext_module(p.degree, &p.source, &p.target)?;
        if !e.acts_zero(z)? {
            return Ok(Refutation::Refuted { probe: k, degree: p.degree });
        }
    }
    Ok(Refutation::Inconclusive)
}

/// Whether two ideals have the same radical.
pub fn radical_agreement(j: &Ideal, k: &Ideal) -> Result<bool> {
    if !j.ring().same_as(k.ring()) {
        return Err(Error::RingMismatch);
    }
    for g in j.generators() {
        if !k.radical_contains(g)? {
            return Ok(false);
        }
    }
    for g in k.generators() {
        if !j.radical_contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::differents::kaehler_different;

    fn ring(vars: &[&str], rels: &[&str]) -> Arc<QuotientRing> {
        let a = PolyRing::new(Field::Rational, vars.iter().copied(), MonomialOrder::GrevLex);
        let rels = rels.iter().map(|s| a.parse(s).unwrap()).collect();
        QuotientRing::new(&a, rels).unwrap()
    }

    fn last_example() -> Arc<QuotientRing> {
        ring(&["x", "y", "z"], &["x^2 - y^2", "x^2 - z^2", "x*y", "x*z", "y*z"])
    }

    #[test]
    fn enveloping_over_the_base_field() {
        let r = last_example();
        assert_eq!(r.vector_space_dimension(), Some(5));
        let env = enveloping(&r, &NormalizationData::base_field(&r)).unwrap();
        assert!(env.is_well_defined());
        assert_eq!(env.ring().nvars(), 6);
        assert_eq!(env.ring().ambient().vars()[3], "xp");
        assert_eq!(env.ring().vector_space_dimension(), Some(25));
        assert_eq!(env.kernel_generators().len(), 3);
    }

    #[test]
    fn primed_names_avoid_clashes() {
        let a = PolyRing::new(Field::Rational, ["x", "xp"], MonomialOrder::GrevLex);
        let (big, _, _) = doubled_ring(&a, false);
        assert_eq!(big.vars(), ["x", "xp", "x_p", "xpp"]);
    }

    #[test]
    fn noether_different_of_the_last_example() {
        let r = last_example();
        let k = NormalizationData::base_field(&r);
        let aleph = noether_different(&r, &k).unwrap();
        assert!(aleph.equals(&r.parse_ideal(&["x^2"]).unwrap()).unwrap());
        assert!(kaehler_different(&r, &k).unwrap().is_zero());
        assert!(tor_vanishing_certifies_equality(&r, &k).unwrap().certified());
    }

    #[test]
    fn noether_different_of_the_first_example() {
        let r = ring(&["x", "y"], &["x^5", "x*y"]);
        let a = NormalizationData::new(&r, vec![r.ambient().var(1)]).unwrap();
        let env = enveloping(&r, &a).unwrap();
        assert_eq!(env.kernel_generators().len(), 1);
        let aleph = noether_different(&r, &a).unwrap();
        assert!(aleph.equals(&r.parse_ideal(&["y", "x^4"]).unwrap()).unwrap());
        let tor = tor_vanishing_certifies_equality(&r, &a).unwrap();
        assert_eq!(tor.status, XiStatus::Contained);
        assert_eq!(tor.status.to_string(), "xi0 <= noether");
    }

    #[test]
    fn flat_extension_has_no_higher_tor() {
        let r = ring(&["x", "y"], &["x^2"]);
        let a = NormalizationData::new(&r, vec![r.ambient().var(1)]).unwrap();
        assert!(tor_over_normalization(&a, 1).unwrap().is_zero());
        assert!(!tor_over_normalization(&a, 0).unwrap().is_zero());
        assert!(tor_vanishing_certifies_equality(&r, &a).unwrap().certified());
    }

    #[test]
    fn trivial_extension() {
        let r = ring(&["x"], &[]);
        let a = NormalizationData::new(&r, vec![r.ambient().var(0)]).unwrap();
        let env = enveloping(&r, &a).unwrap();
        assert!(env.kernel_generators().is_empty());
        assert!(noether_different(&r, &a).unwrap().is_unit());
        assert!(kaehler_different(&r, &a).unwrap().is_unit());
    }

    #[test]
    fn refutation() {
        let r = ring(&["x", "y"], &["x^5", "x*y"]);
        let m = FPModule::cyclic(&r.parse_ideal(&["x^3"]).unwrap());
        let probes = [Probe { degree: 2, source: m.clone(), target: m }];
        let p = |s: &str| r.ambient().parse(s).unwrap();
        assert!(matches!(derived_different_refute(&p("x"), &r, &probes).unwrap(), Refutation::Refuted { .. }));
        assert!(matches!(derived_different_refute(&p("x - y"), &r, &probes).unwrap(), Refutation::Refuted { .. }));
        assert_eq!(derived_different_refute(&p("y"), &r, &probes).unwrap(), Refutation::Inconclusive);
        assert_eq!(derived_different_refute(&p("0"), &r, &probes).unwrap(), Refutation::Inconclusive);
    }

    #[test]
    fn radicals_agree() {
        let r = ring(&["x", "y"], &[]);
        let i = |g: &[&str]| r.parse_ideal(g).unwrap();
        assert!(radical_agreement(&i(&["x^2"]), &i(&["x"])).unwrap());
        assert!(!radical_agreement(&i(&["x"]), &i(&["y"])).unwrap());
    }
}
