//! The Weyl algebra in normal order, the quadratic lift `ω` of `sp(W_C)`, the
//! Fock action on polynomials, graded truncations and compact-group isotypic
//! decomposition.
//!
//! Conventions: `x_i = e_i` acts by multiplication and `a_i = i·f_i` by
//! `∂/∂x_i`. The quadratic lift is symmetrized, so the torus of `U(1)` acts on
//! `x^k` by `k + 1/2`.

mod isotypic;
mod monomial;
mod space;
mod weyl;

pub use isotypic::{
    ad_invariants, isotypic_decompose, isotypic_decompose_constrained, restricted_kernel, weyl_basis, CompactAction,
    CompactFactor, Constraints, IsotypicComponent, WeylSpan,
};
pub use monomial::Exponents;
pub use space::{act_on_fock, dump_json, dump_text, operator_matrix, operator_matrix_into, FockVector, GradedSlice, Involution};
pub use weyl::{bracket, normal_order_product, omega_c, Monomial, SymplecticSpace, WeylElement};
