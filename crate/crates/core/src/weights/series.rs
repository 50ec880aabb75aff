use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::KTypeLabel;
use crate::{Error, Result};

/// Multiplicities of K-types, complete for types first reached at Fock degree ≤ `horizon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SeriesRepr", try_from = "SeriesRepr")]
pub struct CharacterSeries {
    horizon: u32,
    multiplicities: BTreeMap<KTypeLabel, u64>,
    graded: Option<BTreeMap<(u32, KTypeLabel), u64>>,
}

impl CharacterSeries {
    pub fn new(horizon: u32) -> Self {
        CharacterSeries { horizon, multiplicities: BTreeMap::new(), graded: None }
    }

    pub fn graded(horizon: u32) -> Self {
        CharacterSeries { horizon, multiplicities: BTreeMap::new(), graded: Some(BTreeMap::new()) }
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn add(&mut self, label: KTypeLabel, mult: u64) {
        if mult > 0 {
            *self.multiplicities.entry(label).or_default() += mult;
        }
    }

    /// Records `mult` copies first seen in Fock degree `degree`; ignored beyond the horizon.
    pub fn add_graded(&mut self, degree: u32, label: KTypeLabel, mult: u64) {
        if mult == 0 || degree > self.horizon {
            return;
        }
        if let Some(g) = &mut self.graded {
            *g.entry((degree, label.clone())).or_default() += mult;
        }
        self.add(label, mult);
    }

    pub fn get(&self, label: &KTypeLabel) -> u64 {
        self.multiplicities.get(label).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&KTypeLabel, u64)> {
        self.multiplicities.iter().map(|(l, &m)| (l, m))
    }

    pub fn labels(&self) -> impl Iterator<Item = &KTypeLabel> {
        self.multiplicities.keys()
    }

    pub fn graded_entries(&self) -> Option<&BTreeMap<(u32, KTypeLabel), u64>> {
        self.graded.as_ref()
    }

    /// Lowest Fock degree in which each label occurs.
    pub fn first_degrees(&self) -> Option<BTreeMap<KTypeLabel, u32>> {
        let g = self.graded.as_ref()?;
        let mut out = BTreeMap::new();
        for (d, l) in g.keys() {
            out.entry(l.clone()).or_insert(*d);
        }
        Some(out)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    /// Keeps only the labels accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(&KTypeLabel) -> bool) -> CharacterSeries {
        CharacterSeries {
            horizon: self.horizon,
            multiplicities: self.multiplicities.iter().filter(|(l, _)| keep(l)).map(|(l, &m)| (l.clone(), m)).collect(),
            graded: self
                .graded
                .as_ref()
                .map(|g| g.iter().filter(|((_, l), _)| keep(l)).map(|(k, &m)| (k.clone(), m)).collect()),
        }
    }

    /// Same entries under a new completeness bound.
    pub fn with_horizon(mut self, horizon: u32) -> CharacterSeries {
        self.horizon = horizon;
        self
    }

    pub fn combine(&self, other: &CharacterSeries, op: SeriesOp) -> Result<Combined> {
        if self.horizon != other.horizon {
            return Err(Error::HorizonMismatch(self.horizon, other.horizon));
        }
        Ok(match op {
            SeriesOp::Sum => {
                let mut out = CharacterSeries::new(self.horizon);
                for (l, m) in self.iter().chain(other.iter()) {
                    out.add(l.clone(), m);
                }
                Combined::Series(out)
            }
            SeriesOp::PointwiseMin => {
                let mut out = CharacterSeries::new(self.horizon);
                for (l, m) in self.iter() {
                    out.add(l.clone(), m.min(other.get(l)));
                }
                Combined::Series(out)
            }
            SeriesOp::DifferenceReport => Combined::Difference(self.difference(other)),
        })
    }

    /// Every label whose multiplicities differ, regardless of horizons.
    pub fn difference(&self, other: &CharacterSeries) -> SeriesDifference {
        let mut labels: Vec<&KTypeLabel> = self.labels().chain(other.labels()).collect();
        labels.sort();
        labels.dedup();
        SeriesDifference {
            entries: labels
                .into_iter()
                .filter_map(|l| {
                    let (a, b) = (self.get(l), other.get(l));
                    (a != b).then(|| DifferenceEntry { label: l.clone(), left: a, right: b })
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesOp {
    Sum,
    PointwiseMin,
    DifferenceReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Combined {
    Series(CharacterSeries),
    Difference(SeriesDifference),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceEntry {
    pub label: KTypeLabel,
    pub left: u64,
    pub right: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDifference {
    pub entries: Vec<DifferenceEntry>,
}

impl SeriesDifference {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    label: String,
    factors: KTypeLabel,
    multiplicity: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    degree: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    horizon: u32,
    entries: Vec<EntryRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    graded: Option<Vec<EntryRepr>>,
}

impl From<CharacterSeries> for SeriesRepr {
    fn from(s: CharacterSeries) -> Self {
        let entry = |l: KTypeLabel, m: u64, degree| EntryRepr { label: l.to_string(), factors: l, multiplicity: m, degree };
        SeriesRepr {
            horizon: s.horizon,
            graded: s.graded.map(|g| g.into_iter().map(|((d, l), m)| entry(l, m, Some(d))).collect()),
            entries: s.multiplicities.into_iter().map(|(l, m)| entry(l, m, None)).collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for CharacterSeries {
    type Error = Error;
    fn try_from(r: SeriesRepr) -> Result<Self> {
        let mut s = CharacterSeries::new(r.horizon);
        for e in r.entries {
            s.add(e.factors, e.multiplicity);
        }
        if let Some(g) = r.graded {
            let mut graded = BTreeMap::new();
            let mut marginal: BTreeMap<KTypeLabel, u64> = BTreeMap::new();
            for e in g {
                let d = e.degree.ok_or_else(|| Error::Parse("graded entry without degree".into()))?;
                *marginal.entry(e.factors.clone()).or_default() += e.multiplicity;
                graded.insert((d, e.factors), e.multiplicity);
            }
            if marginal != s.multiplicities {
                return Err(Error::Parse("graded entries do not sum to the multiplicities".into()));
            }
            s.graded = Some(graded);
        }
        Ok(s)
    }
}
