//! Symbolic analysis of scattered trees presented as finite terms.
//!
//! Terms describe possibly infinite rooted trees built from a single vertex
//! by successor, root-identified suprema and sums along a one-way path.
//! On top of them the crate computes Cantor-Bendixson ranks of end spaces,
//! classifies what every self-embedding must preserve, and counts or builds
//! equimorphic twins. Finite trees get exact algorithms and brute-force
//! oracles that cross-check the symbolic side.

pub mod ends;
pub mod engine;
pub mod error;
pub mod finite_tree;
pub mod oracle;
pub mod ordinal;
pub mod rank;
pub mod stability;
pub mod term;
pub mod twins;

pub use engine::{Config, Engine};
pub use error::{Error, Result};
pub use ordinal::Ordinal;
pub use term::{ComponentSeq, Context, Mult, Term, Tri, VertexAddress};
