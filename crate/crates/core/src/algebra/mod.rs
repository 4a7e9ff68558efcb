//! Finite fields, polynomial rings and dense linear algebra.

pub mod ext;
pub mod factor;
pub mod field;
pub mod fq;
pub mod irreducible;
pub mod linalg;
pub mod mpoly;
pub mod poly;

pub use ext::{ExtElem, ExtField};
pub use factor::{factor, factor_seeded, roots_seeded};
pub use field::FiniteField;
pub use fq::{FqElem, FqField};
pub use irreducible::{count_irreducibles, irreducibles_of_degree, is_irreducible};
pub use linalg::Matrix;
pub use mpoly::{mpoly_specialize, MPoly};
pub use poly::{crt, APoly, Degree, Poly};
