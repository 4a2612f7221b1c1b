//! Exact homological algebra over the integers.
//!
//! The crate computes finite, machine-checkable invariants built from exact
//! integer linear algebra: Smith/Hermite normal forms, finitely presented
//! abelian groups with their Pontrjagin duals and bilinear pairings into
//! Q/Z, bounded cochain complexes with Künneth verification, cohomology of a
//! finite cyclic group with the bar-resolution cup product, Čech complexes
//! of a covering with the Alexander-Whitney product, component groups with
//! the monodromy pairing of a lattice datum, and the valuation-level
//! evaluation maps of a local field.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything is safe to share across threads.

pub mod abelian;
pub mod cech;
pub mod complex;
pub mod group_cohomology;
pub mod matrix;
pub mod monodromy;
pub mod valuation;

mod error;

pub use error::{Error, Result};
