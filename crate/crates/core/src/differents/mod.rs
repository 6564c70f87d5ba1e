//! Kähler differentials, Fitting ideals, Jacobian ideals, and the Kähler
//! and Noether differents of a ring over a Noether normalization.

mod kaehler;
mod noether;
mod normalization;

pub use kaehler::{
    fitting_ideal, jacobian_ideal, kaehler_different, kaehler_differentials, kaehler_presentation,
    smoothness_criterion, Smoothness,
};
pub use noether::{
    derived_different_refute, enveloping, noether_different, radical_agreement, tor_over_normalization,
    tor_vanishing_certifies_equality, tor_with_variable_order, EnvelopingPresentation, Probe, Refutation,
    TorVanishing, XiStatus,
};
pub use normalization::{normalization_check, FinitenessCertificate, NormalizationData};
