//! Truncated formal group laws and iterative Hasse-Schmidt derivations in
//! positive characteristic.

pub mod algebra;
pub mod error;
pub mod formal_group;
pub mod hs;
pub mod prolongation;
pub mod suite;
pub mod text;
pub mod trunc;

pub use error::{Error, Result};
