//! Torsion of reduced Drinfeld modules and Frobenius matrices.

pub mod kernel;
pub mod module;
pub mod reduce;

pub use kernel::{linearized_kernel, splitting_degree, DEFAULT_AMBIENT_BITS};
pub use module::{
    carlitz_reciprocity_check, frobenius_matrix, splits_completely, torsion, FrobeniusElement, TorsionCaps,
    TorsionModule, BASIS_ATTEMPTS,
};
pub use reduce::{reduce_at, ReducedModule};
