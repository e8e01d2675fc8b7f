//! Paired bootstrap resampling: significance of a corpus-level metric
//! delta between two systems scored against the same references. Both
//! systems are resampled over identical segment indices; the p-value is
//! the smoothed fraction of resamples in which the observed winner fails
//! to win.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bleu::{bleu_score, bleu_segment_stats, BleuStats};
use super::chrf::{chrf_score, chrf_segment_stats, ChrfStats};
use super::{MetricsError, Result};

/// Metric evaluated inside each bootstrap trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BootstrapMetric {
    Bleu,
    ChrfPp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignificanceResult {
    pub score_a: f64,
    pub score_b: f64,
    /// Full-corpus score difference, system A minus system B.
    pub delta: f64,
    pub p_value: f64,
    pub trials: u64,
    pub seed: u64,
    pub significant: bool,
}

enum PairedStats {
    Bleu(Vec<BleuStats>, Vec<BleuStats>),
    Chrf(Vec<ChrfStats>, Vec<ChrfStats>),
}

impl PairedStats {
    fn scores(&self, indices: &[usize]) -> (f64, f64) {
        match self {
            PairedStats::Bleu(a, b) => {
                let mut sum_a = BleuStats::default();
                let mut sum_b = BleuStats::default();
                for &i in indices {
                    sum_a.add(&a[i]);
                    sum_b.add(&b[i]);
                }
                (
                    bleu_score(std::slice::from_ref(&sum_a)),
                    bleu_score(std::slice::from_ref(&sum_b)),
                )
            }
            PairedStats::Chrf(a, b) => {
                let mut sum_a = ChrfStats::default();
                let mut sum_b = ChrfStats::default();
                for &i in indices {
                    sum_a.add(&a[i]);
                    sum_b.add(&b[i]);
                }
                (
                    chrf_score(std::slice::from_ref(&sum_a)),
                    chrf_score(std::slice::from_ref(&sum_b)),
                )
            }
        }
    }
}

/// Tests whether system A's corpus score differs significantly from
/// system B's. Each trial redraws segment indices with replacement and
/// rescores both systems on the same resample; a trial where the
/// full-corpus winner loses or ties counts as a loss. The reported
/// p-value is (losses + 1) / (trials + 1); a zero delta is never
/// significant and reports p = 1.
pub fn paired_bootstrap(
    hyps_a: &[String],
    hyps_b: &[String],
    refs: &[String],
    metric: BootstrapMetric,
    trials: u64,
    seed: u64,
    alpha: f64,
) -> Result<SignificanceResult> {
    if trials == 0 {
        return Err(MetricsError::ZeroTrials);
    }
    if hyps_b.len() != refs.len() {
        return Err(MetricsError::LengthMismatch { left: hyps_b.len(), right: refs.len() });
    }
    let paired = match metric {
        BootstrapMetric::Bleu => PairedStats::Bleu(
            bleu_segment_stats(hyps_a, refs)?,
            bleu_segment_stats(hyps_b, refs)?,
        ),
        BootstrapMetric::ChrfPp => PairedStats::Chrf(
            chrf_segment_stats(hyps_a, refs)?,
            chrf_segment_stats(hyps_b, refs)?,
        ),
    };

    let n = refs.len();
    let full: Vec<usize> = (0..n).collect();
    let (score_a, score_b) = paired.scores(&full);
    let delta = score_a - score_b;

    if delta == 0.0 {
        return Ok(SignificanceResult {
            score_a,
            score_b,
            delta,
            p_value: 1.0,
            trials,
            seed,
            significant: false,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices = vec![0usize; n];
    let mut losses = 0u64;
    for _ in 0..trials {
        for slot in &mut indices {
            *slot = rng.random_range(0..n);
        }
        let (trial_a, trial_b) = paired.scores(&indices);
        let trial_delta = trial_a - trial_b;
        let lost = if delta > 0.0 { trial_delta <= 0.0 } else { trial_delta >= 0.0 };
        if lost {
            losses += 1;
        }
    }
    let p_value = (losses + 1) as f64 / (trials + 1) as f64;
    Ok(SignificanceResult {
        score_a,
        score_b,
        delta,
        p_value,
        trials,
        seed,
        significant: p_value < alpha,
    })
}
