//! Exact computations with extended affine Weyl groups, twisted conjugacy
//! classes and cocenters of affine Hecke algebras.

pub mod affine_weyl;
pub mod conjugacy;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod root_datum;
pub mod strata;

pub use affine_weyl::{AffineElt, AffineWeyl, GenKind, Twist};
pub use conjugacy::{ConjInvariant, Conjugacy};
pub use error::{Budget, Decision, Error, Result};
pub use root_datum::{LatticeSpec, RootDatum};
