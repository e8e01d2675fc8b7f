//! Corpus BLEU over 13a tokens: clipped n-gram precisions (orders 1–4),
//! exponential smoothing of zero numerators, and the brevity penalty.

use std::collections::HashMap;

use rayon::prelude::*;

use super::signature::{bleu_signature, bleu_signature_pretokenized};
use super::tokenize::tokenize_13a;
use super::{MetricResult, MetricsError, Result};

pub const BLEU_ORDER: usize = 4;

/// Per-segment sufficient statistics; corpus BLEU is a function of their
/// sums, which is what bootstrap resampling aggregates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BleuStats {
    /// Clipped n-gram matches per order.
    pub correct: [usize; BLEU_ORDER],
    /// Hypothesis n-gram counts per order.
    pub total: [usize; BLEU_ORDER],
    pub hyp_len: usize,
    pub ref_len: usize,
}

impl BleuStats {
    pub fn add(&mut self, other: &BleuStats) {
        for n in 0..BLEU_ORDER {
            self.correct[n] += other.correct[n];
            self.total[n] += other.total[n];
        }
        self.hyp_len += other.hyp_len;
        self.ref_len += other.ref_len;
    }
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

fn stats_from_tokens(hyp_tokens: &[String], ref_tokens: &[String]) -> BleuStats {
    let mut stats = BleuStats {
        hyp_len: hyp_tokens.len(),
        ref_len: ref_tokens.len(),
        ..Default::default()
    };
    for n in 1..=BLEU_ORDER {
        let ref_counts = ngram_counts(ref_tokens, n);
        for (gram, &count) in &ngram_counts(hyp_tokens, n) {
            stats.total[n - 1] += count;
            stats.correct[n - 1] +=
                count.min(ref_counts.get(gram).copied().unwrap_or(0));
        }
    }
    stats
}

fn segment_stats_with<F>(hyps: &[String], refs: &[String], tokenize: F) -> Result<Vec<BleuStats>>
where
    F: Fn(&str) -> Vec<String> + Sync,
{
    if hyps.len() != refs.len() {
        return Err(MetricsError::LengthMismatch { left: hyps.len(), right: refs.len() });
    }
    if hyps.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    Ok(hyps
        .par_iter()
        .zip(refs)
        .map(|(h, r)| stats_from_tokens(&tokenize(h), &tokenize(r)))
        .collect())
}

/// Tokenizes and scores each aligned (hypothesis, reference) segment.
pub fn bleu_segment_stats(hyps: &[String], refs: &[String]) -> Result<Vec<BleuStats>> {
    segment_stats_with(hyps, refs, tokenize_13a)
}

/// Corpus BLEU×100 from summed statistics.
///
/// Precisions with a zero numerator are smoothed to `1/(2^t · total)`
/// with `t` counting the zero orders seen so far; a corpus with no
/// unigram match at all, or with no n-grams of some order, reports
/// exactly 0. The brevity penalty is `exp(1 − r/h)` when the hypothesis
/// is shorter than the reference.
pub fn bleu_score(stats: &[BleuStats]) -> f64 {
    let mut sum = BleuStats::default();
    for s in stats {
        sum.add(s);
    }
    if sum.correct[0] == 0 {
        return 0.0;
    }
    let mut log_sum = 0.0;
    let mut smooth = 1.0f64;
    for n in 0..BLEU_ORDER {
        if sum.total[n] == 0 {
            return 0.0;
        }
        let precision = if sum.correct[n] == 0 {
            smooth *= 2.0;
            1.0 / (smooth * sum.total[n] as f64)
        } else {
            sum.correct[n] as f64 / sum.total[n] as f64
        };
        log_sum += precision.ln();
    }
    let brevity = if sum.hyp_len < sum.ref_len {
        (1.0 - sum.ref_len as f64 / sum.hyp_len as f64).exp()
    } else {
        1.0
    };
    100.0 * brevity * (log_sum / BLEU_ORDER as f64).exp()
}

/// Corpus BLEU with the canonical signature.
pub fn bleu(hyps: &[String], refs: &[String]) -> Result<MetricResult> {
    let stats = bleu_segment_stats(hyps, refs)?;
    Ok(MetricResult { score: bleu_score(&stats), signature: bleu_signature() })
}

/// Corpus BLEU over pre-tokenized text: segments are split on whitespace
/// only, for corpora tokenized upstream. The signature reports
/// `tok:none`.
pub fn bleu_pretokenized(hyps: &[String], refs: &[String]) -> Result<MetricResult> {
    let whitespace = |s: &str| s.split_whitespace().map(str::to_string).collect();
    let stats = segment_stats_with(hyps, refs, whitespace)?;
    Ok(MetricResult { score: bleu_score(&stats), signature: bleu_signature_pretokenized() })
}
