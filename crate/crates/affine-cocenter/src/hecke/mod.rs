//! Hecke-algebra side: class polynomials, cocenter bases and finite
//! character tables.

mod bases;
mod chartable;
mod classpoly;
mod mpoly;
mod poly;

pub use bases::{rigid_basis, zero_hecke_basis_affine, zero_hecke_basis_finite, ZeroHeckeClass};
pub use chartable::{CharTable, Module, Residue, Specialization};
pub use classpoly::{ClassPolyDecomp, Cocenter};
pub use mpoly::{determinant, Factored, MMat, MPoly, Monomial};
pub use poly::{Degree, PolyZq};
