//! Finite permutation groups and the group theory of pre-Galois field
//! extensions: complements of point stabilizers, correspondence maps,
//! monodromy and twisting models, and rigidity checks.

pub mod bounds;
pub mod correspondence;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod geometric;
pub mod permgroup;
pub mod rigidity;

pub use bounds::Bounds;
pub use error::{Error, Result};
