//! Graded commutative algebra over polynomial rings: Gröbner bases for
//! submodules of free modules, syzygies, minimal free resolutions, Hilbert
//! series and Hom modules.
//!
//! Coefficients are exact: rationals or a prime field.

pub mod error;
pub mod exchange;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod hom;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod resolution;

pub use error::{CommalgError, Result};
pub use exchange::{presentation_from_json, presentation_to_json, PresentationJson};
pub use field::{Field, FieldKind, PrimeField, Rationals};
pub use hilbert::HilbertSeries;
pub use hom::{dual_module, hom_module, is_surjective, HomModule};
pub use matrix::{dense_rank, random_rank, ModuleMap};
pub use module::{groebner_basis, minimal_syzygies, syzygies, Ideal, ModulePresentation};
pub use monomial::Monomial;
pub use poly::{PolyRing, Polynomial};
pub use resolution::{free_resolution, BettiTable, Resolution};
