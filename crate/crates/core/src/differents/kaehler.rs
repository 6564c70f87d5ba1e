use std::fmt;
use std::sync::Arc;

use super::NormalizationData;
use crate::algebra::Polynomial;
use crate::error::Result;
use crate::groebner::{Column, Ideal, QuotientRing};
use crate::homology::FPModule;

/// Gradient of `f` as a relation on `dx_1, ..., dx_n`.
fn gradient(f: &Polynomial) -> Column {
    (0..f.ring().nvars()).map(|i| f.derivative(i).expect("index in range")).collect()
}

/// `Omega_{R/A}`: generators `dx_i`, one relation per defining generator of
/// `R` and, over `A = k[theta]`, one per `d theta_j`.
pub fn kaehler_presentation(ring: &Arc<QuotientRing>, base: &NormalizationData) -> Result<FPModule> {
    if !base.ring().same_as(ring) {
        return Err(crate::Error::RingMismatch);
    }
    if !base.is_base_field() {
        base.require_certified()?;
    }
    let rels = ring
        .defining_generators()
        .iter()
        .chain(base.thetas())
        .map(gradient)
        .collect();
    FPModule::new(ring, ring.nvars(), rels)
}

/// `Omega_{R/k}`.
pub fn kaehler_differentials(ring: &Arc<QuotientRing>) -> FPModule {
    kaehler_presentation(ring, &NormalizationData::base_field(ring)).expect("base field needs no certificate")
}

/// `Fitt_j(M)`: the ideal of `(g - j)`-minors of a presentation with `g`
/// generators. `(1)` when `j >= g`, `(0)` when there are fewer than `g - j`
/// relations.
pub fn fitting_ideal(module: &FPModule, j: usize) -> Result<Ideal> {
    let ring = module.ring();
    let g = module.generator_count();
    if j >= g {
        return Ok(Ideal::unit(ring));
    }
    let t = g - j;
    if t > module.relations().len() {
        return Ok(Ideal::zero(ring));
    }
    Ok(Ideal::new(ring, module.presentation().minors(t)?))
}

/// `jac(R) = Fitt_{dim R}(Omega_{R/k})`.
pub fn jacobian_ideal(ring: &Arc<QuotientRing>) -> Result<Ideal> {
    let d = ring.krull_dimension().value()?;
    fitting_ideal(&kaehler_differentials(ring), d)
}

/// `kappa_A(R) = Fitt_0(Omega_{R/A})`.
pub fn kaehler_different(ring: &Arc<QuotientRing>, base: &NormalizationData) -> Result<Ideal> {
    base.require_certified()?;
    fitting_ideal(&kaehler_presentation(ring, base)?, 0)
}

#[derive(Clone, Debug)]
pub enum Smoothness {
    Smooth,
    /// The proper Jacobian ideal cuts out the singular locus.
    Singular(Ideal),
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothness::Smooth => write!(f, "smooth"),
            Smoothness::Singular(j) => write!(f, "singular, jacobian ideal {j}"),
        }
    }
}

/// Smooth iff the Jacobian ideal is the unit ideal.
pub fn smoothness_criterion(ring: &Arc<QuotientRing>) -> Result<Smoothness> {
    let j = jacobian_ideal(ring)?;
    Ok(if j.is_unit() {
        Smoothness::Smooth
    } else {
        Smoothness::Singular(j)
    })
}
