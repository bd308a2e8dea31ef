//! Twisted quiver sheaves of split bundles on the projective line.

mod bundle;
mod cech;
mod les;
mod qsheaf;

pub use bundle::{BinForm, FormMatrix, SplitBundle};
pub use cech::{cech_hyper, cech_hyper_with_window, default_window, HyperReport};
pub use les::{
    chi, compose, delta0_matrix, delta1_matrix, euler_characteristic, euler_check, expected_euler, ext_quiver_sheaf,
    h0_dim, h1_dim, middle_dims, sheaf_hom_ext_dims, sheaf_hom_space, tensor_identity, DeltaTerm, SheafComplex,
};
pub use qsheaf::QSheafP1;
