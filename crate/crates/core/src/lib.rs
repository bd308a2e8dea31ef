//! Hom and Ext groups of twisted quiver representations over a field, and of
//! twisted quiver sheaves of split bundles on the projective line.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod field;
pub mod gen;
pub mod linalg;
pub mod p1;
pub mod quiver;
pub mod sequence;
pub mod twisted;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use quiver::{Path, Quiver};
