//! Kazhdan-Lusztig bases, cells and generalized induction for Coxeter groups
//! with unequal parameters.
//!
//! The crate works on finite, length-bounded balls of a Coxeter group. All
//! arithmetic is exact over `Z[v, v^-1]`.

pub mod cells;
pub mod coxeter;
pub mod error;
pub mod g2;
pub mod hecke;
pub mod induction;
pub mod klbasis;
pub mod laurent;

pub use coxeter::{Ball, CoxeterSystem, Elem, Gen, GenSet, Side};
pub use error::{Error, Result};
pub use laurent::{LaurentPoly, Region};
