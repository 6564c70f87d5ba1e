//! Exact commutative algebra: Gröbner bases, free resolutions, Ext and
//! Tor over quotient rings, Fitting ideals, Kähler and Noether differents.

pub mod algebra;
pub mod differents;
pub mod dsl;
pub mod error;
pub mod groebner;
pub mod homology;
pub mod verify;

pub use error::{Error, Result};
