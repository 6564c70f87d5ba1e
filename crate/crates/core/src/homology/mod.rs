//! Finitely presented modules, free resolutions, Ext and Koszul homology.

mod ext;
mod fpmodule;
mod koszul;
mod resolution;

pub use ext::{acts_zero, ext_module, hom_complex, module_annihilator, HomComplex};
pub use fpmodule::{FPModule, Subquotient};
pub use koszul::{koszul_homology, KoszulComplex};
pub use resolution::{
    depth_and_pd, free_resolution, module_depth_and_pd, FreeResolution, Minimality, ResolutionCheck,
};
