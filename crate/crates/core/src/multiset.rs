use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::weight::Weight;

/// Weights with positive multiplicities, kept sorted so every export is
/// deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset(BTreeMap<Weight, u64>);

#[derive(Serialize, Deserialize)]
struct Entry {
    weight: Vec<i64>,
    multiplicity: u64,
}

impl WeightMultiset {
    pub fn new() -> Self {
        WeightMultiset::default()
    }

    pub fn add(&mut self, weight: Weight, mult: u64) {
        if mult > 0 {
            *self.0.entry(weight).or_insert(0) += mult;
        }
    }

    pub fn get(&self, weight: &Weight) -> u64 {
        self.0.get(weight).copied().unwrap_or(0)
    }

    pub fn contains(&self, weight: &Weight) -> bool {
        self.0.contains_key(weight)
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.0.iter().map(|(w, m)| (w, *m))
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.0.keys()
    }

    /// Rows `coords TAB multiplicity`, coordinates comma-separated, in
    /// display order.
    pub fn to_tsv(&self) -> String {
        self.0.iter().rev().map(|(w, m)| format!("{w}\t{m}\n")).collect()
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<Entry> =
            self.0.iter().map(|(w, m)| Entry { weight: w.0.clone(), multiplicity: *m }).collect();
        serde_json::to_string_pretty(&entries).expect("multiset serialization is infallible")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        let entries: Vec<Entry> = serde_json::from_str(text)?;
        let mut out = WeightMultiset::new();
        for e in entries {
            out.add(Weight(e.weight), e.multiplicity);
        }
        Ok(out)
    }
}

impl FromIterator<(Weight, u64)> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = (Weight, u64)>>(iter: I) -> Self {
        let mut out = WeightMultiset::new();
        for (w, m) in iter {
            out.add(w, m);
        }
        out
    }
}

/// `2:1, 0:1`, largest weight first.
impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (w, m)) in self.0.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}:{m}")?;
        }
        Ok(())
    }
}
