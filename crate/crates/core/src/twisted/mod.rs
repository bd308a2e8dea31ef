//! Twisted representations of a quiver over a field.

mod adjunction;
mod hom;
mod rep;
mod resolution;

pub use adjunction::{adjunction_iso, Adjunction};
pub use hom::{
    arrow_maps_from_vector, build_extension, canonical_maps, delta_matrix, ext1_classes, ext1_dim, ext_report,
    hom_space, is_split_extension, morphism_from_vector, morphism_to_vector, DeltaLayout,
};
pub use rep::{tensor_identity, RepMorphism, TwistData, TwistedRep};
pub use resolution::{
    apply_d, check_resolution_exactness, lift_beta, random_beta, resolution_matrices, ExactnessReport, GradedBasis,
    GradedMapFamily, Resolution, ResolutionLayout,
};
