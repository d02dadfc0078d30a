//! Determinantal objects: the generic matrix, the modules `T_α` and `N_α`,
//! the endomorphism ring of `T = ⊕ T_α`, and their certification.

mod endring;
mod setup;
mod talpha;
mod wedge;

pub use endring::*;
pub use setup::DetSetup;
pub use talpha::*;
pub use wedge::{
    determinant, exterior_power_matrix, multisets, schur_functor_matrix, schur_map_matrix, semistandard_indices,
    subsets, sym_basis, wedge_alpha, wedge_basis,
};
