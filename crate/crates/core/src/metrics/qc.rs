//! Overlap quality control: several translation systems score the same
//! held-out overlap set, and a spread wider than a tolerance flags the
//! highest scorer as suspected of training on the benchmark.

use std::collections::BTreeMap;

use super::{MetricsError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QcVerdict {
    pub per_system_bleu: BTreeMap<String, f64>,
    /// Largest score difference between any two systems (max − min).
    pub max_pairwise_delta: f64,
    pub accepted: bool,
    /// Highest-scoring system, set only when the check fails; ties go to
    /// the alphabetically first name.
    pub suspected: Option<String>,
}

/// Compares per-system scores on a shared overlap set. The check passes
/// when every pairwise difference is within `delta` score points;
/// otherwise the top scorer is reported as suspected.
pub fn qc_overlap_check(scores: &BTreeMap<String, f64>, delta: f64) -> Result<QcVerdict> {
    if scores.is_empty() {
        return Err(MetricsError::EmptyScores);
    }
    let mut max_seen = f64::NEG_INFINITY;
    let mut min_seen = f64::INFINITY;
    let mut top: Option<&String> = None;
    for (name, &score) in scores {
        if score > max_seen {
            max_seen = score;
            top = Some(name);
        }
        min_seen = min_seen.min(score);
    }
    let max_pairwise_delta = max_seen - min_seen;
    let accepted = max_pairwise_delta <= delta;
    Ok(QcVerdict {
        per_system_bleu: scores.clone(),
        max_pairwise_delta,
        accepted,
        suspected: if accepted { None } else { top.cloned() },
    })
}
