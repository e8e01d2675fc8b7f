//! Bookkeeping for filter stages.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Counts flowing through one filter stage. Every input is either kept or
/// attributed to exactly one drop reason, so
/// `kept_count + Σ dropped_by_reason = input_count` always holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub input_count: usize,
    pub kept_count: usize,
    pub dropped_by_reason: BTreeMap<String, usize>,
}

impl FilterReport {
    pub fn new(input_count: usize) -> Self {
        FilterReport {
            input_count,
            kept_count: 0,
            dropped_by_reason: BTreeMap::new(),
        }
    }

    pub fn keep_one(&mut self) {
        self.kept_count += 1;
    }

    pub fn drop_one(&mut self, reason: &str) {
        *self.dropped_by_reason.entry(reason.to_owned()).or_default() += 1;
    }

    pub fn dropped(&self, reason: &str) -> usize {
        self.dropped_by_reason.get(reason).copied().unwrap_or(0)
    }

    pub fn dropped_total(&self) -> usize {
        self.dropped_by_reason.values().sum()
    }

    /// Whether the conservation invariant holds.
    pub fn is_conserved(&self) -> bool {
        self.kept_count + self.dropped_total() == self.input_count
    }
}
