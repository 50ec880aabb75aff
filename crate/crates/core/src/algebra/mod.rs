//! Exact scalars and sparse exact linear algebra.

mod matrix;
mod scalar;

pub use matrix::{rref, solve, stacked_kernel, Rref, SparseMatrix, SparseVec, SpanRelation, Subspace};
pub use scalar::{FieldOp, GaussianRational, Rational};
