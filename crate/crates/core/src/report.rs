//! Structured verification reports shared by the transfer and verifier checks.

use serde::{Deserialize, Serialize};

use crate::weights::{CharacterSeries, SeriesDifference};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch,
    /// A guard or truncation stopped the computation short of a decision.
    Inconclusive,
}

impl Verdict {
    /// Process exit code: 0 match, 1 mismatch, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Match => 0,
            Verdict::Mismatch => 1,
            Verdict::Inconclusive => 2,
        }
    }

    /// Any mismatch wins, then any inconclusive part.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Mismatch, _) | (_, Mismatch) => Mismatch,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Match,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// `Γ_W` content of one summand `W`, as reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakdownEntry {
    pub j: usize,
    pub w: String,
    pub copies: u64,
    pub gamma: CharacterSeries,
}

/// Report of one series-level identity `lhs = rhs`, plus named side checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub config: serde_json::Value,
    /// Labels with `|γ|₁` up to this bound are certified complete on both sides.
    pub horizon: u32,
    pub lhs: CharacterSeries,
    pub rhs: CharacterSeries,
    pub difference: SeriesDifference,
    pub per_w_breakdown: Vec<BreakdownEntry>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl Report {
    /// Verdict from the difference and the checks.
    pub fn decide(
        kind: &str,
        config: serde_json::Value,
        lhs: CharacterSeries,
        rhs: CharacterSeries,
        per_w_breakdown: Vec<BreakdownEntry>,
        checks: Vec<Check>,
    ) -> Report {
        let difference = lhs.difference(&rhs);
        let ok = difference.is_empty() && checks.iter().all(|c| c.passed);
        Report {
            kind: kind.to_string(),
            config,
            horizon: lhs.horizon().min(rhs.horizon()),
            lhs,
            rhs,
            difference,
            per_w_breakdown,
            checks,
            verdict: if ok { Verdict::Match } else { Verdict::Mismatch },
        }
    }
}

/// Maps an error to the verdict it implies, if it is a truncation artifact.
pub fn verdict_for_error(e: &Error) -> Option<Verdict> {
    e.is_inconclusive().then_some(Verdict::Inconclusive)
}
