//! Mining configuration shared by the pipelines.

use serde::{Deserialize, Serialize};

use super::{MineError, Result};

/// Thresholds and sizes for the mining pipelines. Defaults are the
/// high-resource settings: cosine 0.80, margin 1.06 with 4 neighbors.
/// All thresholds are inclusive (score ≥ threshold keeps the pair).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MiningConfig {
    pub cosine_threshold: f64,
    pub margin_threshold: f64,
    /// Neighbors per side in margin scoring.
    pub k_nn: usize,
    /// Coarse cells probed per shard in monolingual mining.
    pub top_clusters: usize,
    pub min_words: usize,
    pub max_words: usize,
    /// Comparable mining applies the cosine gate on top of the margin
    /// when set (high-resource mode); low-resource mining clears it.
    pub cosine_gate: bool,
    /// Keep at most one pair per target (greedy best) in monolingual
    /// mining. Off by default: many queries may share a target.
    pub unique_targets: bool,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            cosine_threshold: 0.80,
            margin_threshold: 1.06,
            k_nn: 4,
            top_clusters: 1024,
            min_words: 4,
            max_words: 40,
            cosine_gate: true,
            unique_targets: false,
        }
    }
}

impl MiningConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(MineError::Config { reason });
        if self.cosine_threshold.is_nan() || self.cosine_threshold <= 0.0 {
            return fail(format!("cosine_threshold must be positive, got {}", self.cosine_threshold));
        }
        if self.margin_threshold.is_nan() || self.margin_threshold <= 0.0 {
            return fail(format!("margin_threshold must be positive, got {}", self.margin_threshold));
        }
        if self.k_nn == 0 {
            return fail("k_nn must be at least 1".into());
        }
        if self.top_clusters == 0 {
            return fail("top_clusters must be at least 1".into());
        }
        if self.min_words == 0 || self.max_words < self.min_words {
            return fail(format!(
                "word bounds must satisfy 1 <= min <= max, got {}..{}",
                self.min_words, self.max_words
            ));
        }
        Ok(())
    }
}
