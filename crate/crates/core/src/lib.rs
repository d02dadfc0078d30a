//! Tilting bundles on Grassmannians and the associated modules over
//! determinantal rings.
//!
//! - [`partitions`], [`schurcalc`]: partition combinatorics and the Schur
//!   calculus of `GL` representations.
//! - [`bott`]: cohomology of homogeneous bundles and vanishing checkers.
//! - [`detvar`]: the modules `T_α`, `N_α` over `R = S / I_{l+1}` and their
//!   certification.

pub mod bott;
pub mod detvar;
pub mod error;
pub mod par;
pub mod partitions;
pub mod schurcalc;

pub use error::{DetvarError, Result};
pub use partitions::{binomial, enumerate_box, weyl_dim, BoxSet, Partition, WeightVector};
