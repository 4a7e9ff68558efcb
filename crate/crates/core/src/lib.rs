//! Exact arithmetic for Drinfeld `F_q[T]`-modules of arbitrary rank.

pub mod algebra;
pub mod drinfeld;
pub mod harness;
pub mod error;
pub mod residue;
pub mod text;
pub mod torsion;

pub use error::{Error, Result};
