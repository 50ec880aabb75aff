//! Classical dual pairs, their quadratic realizations, see-saws and the
//! closed-form data of the transfer tables.
//!
//! Descriptor syntax: `FAMILY:group(args)/group(args)`, second member the
//! smaller one. See [`DualPairDescriptor::from_str`].

mod build;
mod descriptor;
mod tables;

pub use build::{build_pair, build_seesaw, root_vectors, BuiltPair, LieGeneratorSet, SeesawConfig};
pub use descriptor::{DualPairDescriptor, Family, RealGroup};
pub use tables::{degree_j, degree_j0, rho_pq, stable_range, OCharacterLabel};
