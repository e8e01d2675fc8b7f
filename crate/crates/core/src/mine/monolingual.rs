//! Monolingual global mining: every query searches the sharded index for
//! its best target.

use rayon::prelude::*;

use crate::embed::EmbeddingMatrix;
use crate::filter::Sentence;
use crate::index::{IndexError, ShardSet};

use super::{BitextPair, MineError, MiningConfig, MiningMethod, Result};

/// Searches the shards for each query's best target and keeps the pair
/// when the exact cosine clears `cosine_threshold`. Many queries may share
/// one target; set `unique_targets` in the config to keep only the best
/// pair per target afterwards. Output is sorted by (src id, tgt id).
pub fn mine_monolingual(
    queries: &[Sentence],
    query_embeds: &EmbeddingMatrix,
    targets: &ShardSet,
    target_sents: &[Sentence],
    cfg: &MiningConfig,
) -> Result<Vec<BitextPair>> {
    cfg.validate()?;
    if queries.len() != query_embeds.n() {
        return Err(MineError::CountMismatch {
            side: "query",
            sentences: queries.len(),
            rows: query_embeds.n(),
        });
    }
    if target_sents.len() != targets.n() {
        return Err(MineError::CountMismatch {
            side: "target",
            sentences: target_sents.len(),
            rows: targets.n(),
        });
    }
    if !query_embeds.is_normalized() {
        return Err(IndexError::NotNormalized.into());
    }
    if query_embeds.d() != targets.d() {
        return Err(MineError::DimMismatch { left: query_embeds.d(), right: targets.d() });
    }

    let hits: Vec<Option<(usize, u64, f64)>> = (0..queries.len())
        .into_par_iter()
        .map(|i| -> Result<Option<(usize, u64, f64)>> {
            let best = targets.search(query_embeds.row(i), cfg.top_clusters)?;
            Ok(best.and_then(|cand| {
                let score = cand.exact_score.expect("search rescores exactly");
                (score >= cfg.cosine_threshold).then_some((i, cand.target_id, score))
            }))
        })
        .collect::<Result<_>>()?;

    let mut pairs: Vec<BitextPair> = hits
        .into_iter()
        .flatten()
        .map(|(i, target_id, score)| BitextPair {
            src: queries[i].clone(),
            tgt: target_sents[target_id as usize].clone(),
            score,
            method: MiningMethod::Cosine,
        })
        .collect();
    pairs.sort_by_key(|pair| (pair.src.id, pair.tgt.id));
    if cfg.unique_targets {
        pairs = unique_targets(pairs);
    }
    Ok(pairs)
}

/// Greedy per-target selection: keeps the best-scoring pair for each
/// target (ties toward the lower source id) and re-sorts by (src id,
/// tgt id).
pub fn unique_targets(pairs: Vec<BitextPair>) -> Vec<BitextPair> {
    let mut best: std::collections::HashMap<u64, BitextPair> = std::collections::HashMap::new();
    for pair in pairs {
        match best.entry(pair.tgt.id) {
            std::collections::hash_map::Entry::Vacant(slot) => {
                slot.insert(pair);
            }
            std::collections::hash_map::Entry::Occupied(mut slot) => {
                let held = slot.get();
                if pair.score > held.score
                    || (pair.score == held.score && pair.src.id < held.src.id)
                {
                    slot.insert(pair);
                }
            }
        }
    }
    let mut pairs: Vec<BitextPair> = best.into_values().collect();
    pairs.sort_by_key(|pair| (pair.src.id, pair.tgt.id));
    pairs
}
