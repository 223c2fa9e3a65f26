//! Exact workbench for modal operators on Boolean algebras.
//!
//! Finite powerset algebras are handled exhaustively. The finite–cofinite
//! algebra and the interval algebra of the rational unit interval are handled
//! symbolically, with seeded randomized certification.

pub mod algebra;
pub mod bundles;
pub mod dda;
pub mod duality;
pub mod error;
pub mod laws;
pub mod operator;
pub mod script;
pub mod semilattice;
pub mod sweep;

/// Default witness budget for symbolic searches.
pub const DEFAULT_BUDGET: usize = 12;

pub use error::{AlgebraError, OperatorError};
