//! Finite permutative categories, the tuple construction Γ(C) with its
//! Waldhausen structure, and desk-scale K-theory comparisons.

pub mod error;
pub mod fincat;
pub mod gamma;
pub mod wald;
pub mod report;
pub mod compare;
pub mod ktheory;
pub mod spec;

pub use error::{Error, Result};
