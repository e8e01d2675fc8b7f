//! Refiltering an existing parallel corpus by embedding cosine.

use crate::embed::{dot, EmbeddingMatrix};
use crate::filter::FilterReport;

use super::{BitextPair, MineError, MiningMethod, Result};

/// Keeps the pairs whose source/target cosine clears `threshold`
/// (inclusive). Pair ids index rows of the two matrices. Kept pairs carry
/// the recomputed cosine as their score; the report attributes each drop
/// to `below_threshold`.
pub fn filter_existing(
    pairs: Vec<BitextPair>,
    embed_src: &EmbeddingMatrix,
    embed_tgt: &EmbeddingMatrix,
    threshold: f64,
) -> Result<(Vec<BitextPair>, FilterReport)> {
    let row = |matrix: &EmbeddingMatrix, side: &'static str, id: u64| {
        usize::try_from(id)
            .ok()
            .filter(|&i| i < matrix.n())
            .ok_or(MineError::MissingEmbedding { side, id })
    };
    let mut report = FilterReport::new(pairs.len());
    let mut kept = Vec::with_capacity(pairs.len());
    for mut pair in pairs {
        let src = row(embed_src, "src", pair.src.id)?;
        let tgt = row(embed_tgt, "tgt", pair.tgt.id)?;
        let cosine = cosine(embed_src.row(src), embed_tgt.row(tgt));
        if cosine >= threshold {
            pair.score = cosine;
            pair.method = MiningMethod::Refilter;
            report.keep_one();
            kept.push(pair);
        } else {
            report.drop_one("below_threshold");
        }
    }
    Ok((kept, report))
}

/// Cosine that tolerates unnormalized rows; a zero-norm side scores 0.
fn cosine(a: &[f32], b: &[f32]) -> f64 {
    let norms = dot(a, a).sqrt() * dot(b, b).sqrt();
    if norms == 0.0 {
        return 0.0;
    }
    dot(a, b) / norms
}

/// Share of the input kept, as a percentage rounded to two decimals. An
/// empty input counts as full retention.
pub fn retention_percent(report: &FilterReport) -> f64 {
    if report.input_count == 0 {
        return 100.0;
    }
    let raw = report.kept_count as f64 * 100.0 / report.input_count as f64;
    (raw * 100.0).round() / 100.0
}
