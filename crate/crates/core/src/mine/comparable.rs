//! Comparable-document mining: margin scoring in both directions, keeping
//! the intersection of forward and backward best matches.

use rayon::prelude::*;

use crate::embed::{dot, EmbeddingMatrix};
use crate::filter::Sentence;
use crate::index::IndexError;

use super::{BitextPair, MineError, MiningConfig, MiningMethod, Result};

/// Mines sentence pairs from two comparable documents. Inputs are assumed
/// already filtered (length, LID, toxicity) with embedding row i belonging
/// to sentence i.
///
/// Every src×tgt cosine is computed; each pair is margin-scored against
/// its `k_nn` nearest neighbors on the opposite side, excluding the
/// partner itself. A pair survives when it is the forward best for its
/// source, the backward best for its target, its margin clears
/// `margin_threshold`, and — when `cosine_gate` is set — its cosine clears
/// `cosine_threshold`.
///
/// When one side has a single sentence, partner exclusion leaves no
/// neighborhood and the margin is undefined; mining then falls back to
/// mutual-best-cosine with the cosine gate applied unconditionally, and
/// the emitted pairs carry the cosine method and score.
pub fn mine_comparable(
    src_sents: &[Sentence],
    src_embeds: &EmbeddingMatrix,
    tgt_sents: &[Sentence],
    tgt_embeds: &EmbeddingMatrix,
    cfg: &MiningConfig,
) -> Result<Vec<BitextPair>> {
    cfg.validate()?;
    if src_sents.len() != src_embeds.n() {
        return Err(MineError::CountMismatch {
            side: "src",
            sentences: src_sents.len(),
            rows: src_embeds.n(),
        });
    }
    if tgt_sents.len() != tgt_embeds.n() {
        return Err(MineError::CountMismatch {
            side: "tgt",
            sentences: tgt_sents.len(),
            rows: tgt_embeds.n(),
        });
    }
    let m = src_sents.len();
    let t = tgt_sents.len();
    if m == 0 || t == 0 {
        return Ok(Vec::new());
    }
    if !src_embeds.is_normalized() || !tgt_embeds.is_normalized() {
        return Err(IndexError::NotNormalized.into());
    }
    if src_embeds.d() != tgt_embeds.d() {
        return Err(MineError::DimMismatch { left: src_embeds.d(), right: tgt_embeds.d() });
    }

    // Full m×t cosine matrix, row-major by source.
    let cos: Vec<f64> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let x = src_embeds.row(i);
            (0..t).map(move |j| dot(x, tgt_embeds.row(j)))
        })
        .collect();
    let cos_at = |i: usize, j: usize| cos[i * t + j];

    let keep_score: Vec<Option<(f64, MiningMethod)>> = if m == 1 || t == 1 {
        (0..m * t).map(|p| Some((cos[p], MiningMethod::Cosine))).collect()
    } else {
        // Top (k_nn + 1) opposite-side indices per row and per column, by
        // cosine descending with ties toward the lower index; dropping the
        // partner leaves the k_nn-neighborhood of each pair.
        let top = |scores: Vec<(usize, f64)>, keep: usize| -> Vec<usize> {
            let mut scores = scores;
            scores.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            scores.truncate(keep);
            scores.into_iter().map(|(idx, _)| idx).collect()
        };
        let src_top: Vec<Vec<usize>> = (0..m)
            .into_par_iter()
            .map(|i| top((0..t).map(|j| (j, cos_at(i, j))).collect(), cfg.k_nn + 1))
            .collect();
        let tgt_top: Vec<Vec<usize>> = (0..t)
            .into_par_iter()
            .map(|j| top((0..m).map(|i| (i, cos_at(i, j))).collect(), cfg.k_nn + 1))
            .collect();

        (0..m)
            .into_par_iter()
            .flat_map_iter(|i| {
                let src_top = &src_top;
                let tgt_top = &tgt_top;
                (0..t).map(move |j| {
                    let mean = |list: &[usize], exclude: usize, score: &dyn Fn(usize) -> f64| {
                        let mut sum = 0.0;
                        let mut count = 0usize;
                        for &z in list.iter().filter(|&&z| z != exclude).take(cfg.k_nn) {
                            sum += score(z);
                            count += 1;
                        }
                        (sum, count)
                    };
                    let (sum_x, count_x) = mean(&src_top[i], j, &|z| cos_at(i, z));
                    let (sum_y, count_y) = mean(&tgt_top[j], i, &|z| cos_at(z, j));
                    debug_assert!(count_x > 0 && count_y > 0);
                    let denom =
                        sum_x / (2.0 * count_x as f64) + sum_y / (2.0 * count_y as f64);
                    if denom <= 0.0 {
                        None
                    } else {
                        Some((cos_at(i, j) / denom, MiningMethod::Margin))
                    }
                })
            })
            .collect()
    };
    let score_at = |i: usize, j: usize| keep_score[i * t + j];

    // Forward best target per source and backward best source per target,
    // ties toward the lower index; pairs without a defined score never win.
    let best = |scores: &mut dyn Iterator<Item = (usize, Option<f64>)>| -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (idx, score) in scores {
            let Some(score) = score else { continue };
            let better = best.is_none_or(|(_, b)| score > b);
            if better {
                best = Some((idx, score));
            }
        }
        best.map(|(idx, _)| idx)
    };
    let forward: Vec<Option<usize>> = (0..m)
        .map(|i| best(&mut (0..t).map(|j| (j, score_at(i, j).map(|(s, _)| s)))))
        .collect();
    let backward: Vec<Option<usize>> = (0..t)
        .map(|j| best(&mut (0..m).map(|i| (i, score_at(i, j).map(|(s, _)| s)))))
        .collect();

    let mut pairs = Vec::new();
    for (i, &fw) in forward.iter().enumerate() {
        let Some(j) = fw else { continue };
        if backward[j] != Some(i) {
            continue;
        }
        let Some((score, method)) = score_at(i, j) else { continue };
        let kept = match method {
            MiningMethod::Cosine => score >= cfg.cosine_threshold,
            _ => {
                score >= cfg.margin_threshold
                    && (!cfg.cosine_gate || cos_at(i, j) >= cfg.cosine_threshold)
            }
        };
        if kept {
            pairs.push(BitextPair {
                src: src_sents[i].clone(),
                tgt: tgt_sents[j].clone(),
                score,
                method,
            });
        }
    }
    pairs.sort_by_key(|pair| (pair.src.id, pair.tgt.id));
    Ok(pairs)
}
