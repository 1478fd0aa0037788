//! Exact rational toolkit for equivariant compactifications of the
//! Heisenberg group `H_{2n+1}` into `P^{2n+1}`.
//!
//! Matrices act on row vectors from the right (`x ↦ x·g`). With that
//! convention the standard realizations are strictly upper triangular, the
//! reference point is `e_1` and the boundary hyperplane is `{x_1 = 0}`.

pub mod closure;
pub mod correspondence;
pub mod error;
pub mod exact;
pub mod heisenberg;
pub mod par;
pub mod random;
pub mod tautological;
pub mod verify;

pub use error::{Error, Result};
