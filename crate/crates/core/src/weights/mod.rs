//! Partitions, highest weights, Littlewood–Richardson coefficients,
//! stable branching rules and the `CharacterSeries` container.

mod branching;
mod halfint;
mod label;
mod lr;
mod partition;
mod series;

pub use branching::{
    branch_gl_to_glgl, branch_gl_to_o, branch_gl_to_sp, gl_tensor, normalize_polynomial, OCharacter,
};
pub use halfint::HalfInt;
pub use label::{infinitesimal_character, rho, weyl_dim, FactorLabel, InfinitesimalCharacter, KTypeLabel};
pub use lr::{lr_coefficient, lr_products};
pub use partition::{partitions_of, partitions_within, GLWeight, Partition};
pub use series::{CharacterSeries, Combined, DifferenceEntry, SeriesDifference, SeriesOp};
