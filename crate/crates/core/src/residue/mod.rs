//! The ring `A/NA`, matrices over it, and the groups `GL_r(A/NA)` and `G(MN, M)`.

pub mod group;
pub mod matrix;
pub mod ring;

pub use group::{
    enumerate_gl, g_order, gl_order, subgroup_order, unit_count, verify_counting_identity, CountingIdentity,
    GroupOrder, DEFAULT_ENUMERATION_CAP,
};
pub use matrix::{char_poly, mat_inverse, reduce_matrix, ResidueElem, ResidueMatrix};
pub use ring::ResidueRing;
