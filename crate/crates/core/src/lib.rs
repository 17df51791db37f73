//! Lagrangian degeneracy loci of divided-square quadratic spaces.
//!
//! The crate builds quadratic spaces on exterior powers over finite fields,
//! samples Lagrangian subspaces, computes the degeneracy loci they cut out,
//! resolves the resulting ideals and reads off arithmetic invariants such as
//! the Hasse invariant of the Frobenius action.

pub mod error;
pub mod exterior;
pub mod field;
pub mod frobenius;
pub mod golden;
pub mod groebner;
pub mod linalg;
pub mod loci;
pub mod module;
pub mod pipeline;
pub mod poly;
pub mod quadspace;
pub mod resolution;
pub mod rng;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldElement};
pub use linalg::Matrix;
