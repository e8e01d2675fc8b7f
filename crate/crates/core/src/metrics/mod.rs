//! Translation-quality metrics and the statistical procedures built on
//! them: 13a tokenization, corpus BLEU and chrF++ with canonical
//! signatures, paired bootstrap significance, reference-overlap QC,
//! score-proportional back-translation allocation, LCSR, and rank
//! correlations.

mod allocate;
mod bleu;
mod bootstrap;
mod chrf;
mod correlate;
mod lcsr;
mod qc;
mod signature;
mod tokenize;

pub use allocate::{bt_allocate, BtAllocation};
pub use bleu::{bleu, bleu_pretokenized, bleu_score, bleu_segment_stats, BleuStats};
pub use bootstrap::{paired_bootstrap, BootstrapMetric, SignificanceResult};
pub use chrf::{chrf_pp, chrf_score, chrf_segment_stats, ChrfStats};
pub use correlate::{kendall_tau_b, pearson, rank_correlations};
pub use lcsr::{avg_lcsr, lcsr};
pub use qc::{qc_overlap_check, QcVerdict};
pub use signature::{
    bleu_signature, bleu_signature_pretokenized, chrf_signature, parse_signature, MetricSpec,
};
pub use tokenize::tokenize_13a;

/// Errors from metric computation.
#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("metric needs at least one segment")]
    EmptyCorpus,
    #[error("segment counts differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("no systems/scores given")]
    EmptyScores,
    #[error("score for {lang} must be positive, got {score}")]
    NonPositiveScore { lang: String, score: f64 },
    #[error("bootstrap needs at least one trial")]
    ZeroTrials,
    #[error("{what} is undefined: no variation in the data")]
    Degenerate { what: &'static str },
    #[error("correlation needs at least 2 points, got {n}")]
    TooFewPoints { n: usize },
    #[error("average LCSR over an empty pair list is undefined")]
    EmptyPairs,
    #[error("bad metric signature: {reason}")]
    BadSignature { reason: String },
}

pub type Result<T> = std::result::Result<T, MetricsError>;

/// A corpus-level metric score with the signature that pins down every
/// parameter of its computation.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricResult {
    /// In [0, 100].
    pub score: f64,
    pub signature: String,
}
