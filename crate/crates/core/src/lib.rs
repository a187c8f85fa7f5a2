//! Representation shifts of finitely presented Z-groups.
//!
//! For a Z-group `K` and a finite group `Σ`, the set `Hom(K, Σ)` with the
//! shift map is a shift of finite type. This crate builds the finite graph
//! presenting it, classifies its cardinality, counts finite-index subgroups
//! through transitive representations, decides lifting problems through
//! split abelian extensions, and carries out the Laurent-polynomial
//! determinant computations that obstruct such lifts.

pub mod error;
pub mod fingroup;
pub mod laurent;
pub mod lifting;
pub mod repshift;
pub mod shiftgraph;
pub mod zgroup;

pub use error::{Error, ParseError, Result};
