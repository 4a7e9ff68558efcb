//! Twisted polynomials, Drinfeld modules and the division polynomials `phi_N`.

pub mod domain;
pub mod module;
pub mod moore;
pub mod twisted;

pub use domain::{APolyDomain, FieldDomain, FrobeniusDomain, GenericDomain};
pub use module::{carlitz, generic_module, module_over_a, phi_of, specialize_module, DrinfeldModule};
pub use moore::moore_determinant;
pub use twisted::{twisted_mul, AdditivePoly, TwistedPoly};
