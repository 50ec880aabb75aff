//! Exact-arithmetic engine for real reductive dual pairs.
//!
//! The crate realizes the Weyl algebra of a complex symplectic space and its
//! Fock representation on polynomials, builds the classical dual pairs and
//! see-saws as quadratic elements, computes K-spectra of theta lifts of
//! characters (combinatorially and by brute force), the K-spectra of the
//! transfer functors `Γ^j`, and checks operator-span identities on finite
//! truncations. Every scalar is a Gaussian rational; nothing is rounded.

pub mod algebra;
pub mod error;
pub mod fock;
pub mod pairs;
pub mod report;
pub mod spectra;
pub mod transfer;
pub mod verifier;
pub mod weights;

pub use error::{Error, Result};
