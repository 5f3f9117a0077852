//! Exact computations around finite morphisms of Fano manifolds: Chern
//! classes of twisted cotangent bundles of weighted hypersurfaces, degree
//! bounds for finite morphisms, and endomorphisms of quadrics.

pub mod bound;
pub mod chern;
pub mod classification;
pub mod cli;
pub mod error;
pub mod exact;
pub mod identities;
pub mod quadric;

pub use error::{Error, Result};
