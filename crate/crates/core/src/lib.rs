//! Exact invariants of Brieskorn manifolds `Σ(a_0, ..., a_n)` and of their
//! Milnor-fiber fillings.

pub mod arith;
pub mod classify;
pub mod cli;
pub mod error;
pub mod exponents;
pub mod floer;
pub mod homology;
pub mod matrix;
pub mod mec;
pub mod milnor;

pub use error::{Error, Result};
