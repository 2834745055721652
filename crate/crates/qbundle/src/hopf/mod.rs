//! Hopf algebras, comodule algebras and Hopf–Galois extensions.

pub mod comodule;
pub mod convolution;
pub mod galois;
pub mod identities;
pub mod structure;

pub use comodule::ComoduleAlgebra;
pub use convolution::{convolution_unit, convolve, LinearFn};
pub use galois::{GaloisExtension, TranslationSource};
pub use identities::{braid_relation, braiding_units, translation_identities};
pub use structure::{HopfRules, HopfStructure};
