//! Exact, desk-scale machinery for graded braided monoidal categories.
//!
//! The crate models a finite semisimple linear category graded over a finite
//! group as pure symbol data (fusion multiplicities, associator matrices,
//! crossing, braiding, twist, duality and pairing scalars), checks every
//! coherence axiom of balanced and lax tortile structures by exhaustive
//! evaluation over simple objects, and derives such structures from
//! genus-zero surface words under an assignment of categorical data to the
//! surface generators.
//!
//! Scalars are exact elements of cyclotomic number fields by default; a
//! floating-point mode is available for quick checks. All checks are
//! deterministic and parallelizable.

pub mod scalar;
pub mod linalg;
pub mod group;
pub mod cat;
pub mod structure;
pub mod diagram;
pub mod axioms;
pub mod report;
pub mod surface;
pub mod sx;
pub mod catalog;

pub use scalar::{Cyclotomic, Rational, Scalar};
pub use structure::StructureBundle;
