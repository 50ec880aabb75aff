//! Truncated-degree checks of operator identities in the oscillator
//! representation: Howe's description of `ω(U(g))`, the see-saw span
//! identity between `U(g)^H` and `U(h′)^{G′}`, its witnesses, and the
//! scalar actions they induce.
//!
//! Every check works on a finite [`SliceSpec`] of Fock degrees and compares
//! exact spans; nothing is sampled.

mod invariants;
mod scalar;
mod spans;

use serde::{Deserialize, Serialize};

pub use invariants::{invariant_polynomials, is_invariant, SymPoly, INVARIANT_GUARD};
pub use scalar::{
    verify_infchar_correspondence, verify_scalar_action, Action, CentralEntry, InfcharReport, ScalarActionReport, ScalarEntry,
};
pub use spans::{verify_howe_image, verify_ugk_spans, xi_witness, SpanCheckReport, SpanVerdict, XiWitness};

use crate::fock::GradedSlice;
use crate::spectra::ORACLE_GUARD;
use crate::{Error, Result};

/// Fock degrees `d_lo..=d_hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceSpec {
    pub d_lo: u32,
    pub d_hi: u32,
}

impl SliceSpec {
    pub fn new(d_lo: u32, d_hi: u32) -> Self {
        SliceSpec { d_lo, d_hi }
    }

    pub fn build(&self, n_vars: usize) -> Result<GradedSlice> {
        if self.d_lo > self.d_hi {
            return Err(Error::Precondition(format!("empty slice {}..={}", self.d_lo, self.d_hi)));
        }
        let size = GradedSlice::size(n_vars, self.d_lo, self.d_hi);
        if size > ORACLE_GUARD as u128 {
            return Err(Error::GuardExceeded { what: "Fock monomials", size: size as usize, limit: ORACLE_GUARD });
        }
        Ok(GradedSlice::new(n_vars, self.d_lo, self.d_hi))
    }
}

#[cfg(test)]
mod tests;
