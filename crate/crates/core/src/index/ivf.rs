//! The IVF-PQ index proper, plus sharding and shard merging.

use crate::embed::{dot, EmbeddingMatrix};

use super::pq::{pq_encode, pq_train, PqCodebooks};
use super::{kmeans, Candidate, IndexError, Result};

const COARSE_ITERS: usize = 25;
const SHARD_SEED_SALT: u64 = 0xD1B5_4A32_D192_ED03;

/// One shard of the index: a coarse quantizer over `k_c` cells, a PQ code
/// per stored vector, and inverted lists holding global vector ids
/// (`id_base + local row`).
#[derive(Debug, Clone, PartialEq)]
pub struct IvfPqIndex {
    pub(crate) d: usize,
    pub(crate) k_c: usize,
    pub(crate) m_sub: usize,
    pub(crate) id_base: u64,
    pub(crate) n: usize,
    /// k_c × d row-major coarse centroids.
    pub(crate) coarse_centroids: Vec<f32>,
    pub(crate) codebooks: PqCodebooks,
    /// n × m_sub PQ codes in local row order.
    pub(crate) codes: Vec<u8>,
    /// Global ids per coarse cell, ascending.
    pub(crate) inverted_lists: Vec<Vec<u64>>,
}

impl IvfPqIndex {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k_c(&self) -> usize {
        self.k_c
    }

    pub fn m_sub(&self) -> usize {
        self.m_sub
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn id_base(&self) -> u64 {
        self.id_base
    }

    /// Ranks coarse cells by true cosine to the query, probes the best
    /// `top_clusters`, scores their members through the PQ lookup table,
    /// and returns up to `top_k` candidates ordered by approximate score
    /// (ties toward the lower id). Exact scores are left unset.
    pub fn query(&self, q: &[f32], top_clusters: usize, top_k: usize) -> Result<Vec<Candidate>> {
        if q.len() != self.d {
            return Err(IndexError::DimMismatch { expected: self.d, got: q.len() });
        }
        let mut ranked: Vec<(usize, f64)> = (0..self.k_c)
            .map(|c| {
                let centroid = &self.coarse_centroids[c * self.d..(c + 1) * self.d];
                let norm = dot(centroid, centroid).sqrt();
                let score = if norm > 0.0 { dot(q, centroid) / norm } else { f64::NEG_INFINITY };
                (c, score)
            })
            .collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

        let table = self.codebooks.lookup_table(q)?;
        let mut candidates = Vec::new();
        for &(cell, _) in ranked.iter().take(top_clusters) {
            for &id in &self.inverted_lists[cell] {
                let local = (id - self.id_base) as usize;
                let row = &self.codes[local * self.m_sub..(local + 1) * self.m_sub];
                candidates.push(Candidate {
                    target_id: id,
                    approx_score: self.codebooks.score_codes(row, &table),
                    exact_score: None,
                });
            }
        }
        candidates.sort_by(|a, b| {
            b.approx_score
                .total_cmp(&a.approx_score)
                .then(a.target_id.cmp(&b.target_id))
        });
        candidates.truncate(top_k);
        Ok(candidates)
    }
}

/// Builds a single-shard index with global ids starting at zero.
pub fn build_index(
    m: &EmbeddingMatrix,
    k_c: usize,
    m_sub: usize,
    seed: u64,
) -> Result<IvfPqIndex> {
    build_index_with_base(m, k_c, m_sub, seed, 0)
}

/// Builds an index whose rows carry global ids `id_base..id_base + n`.
pub fn build_index_with_base(
    m: &EmbeddingMatrix,
    k_c: usize,
    m_sub: usize,
    seed: u64,
    id_base: u64,
) -> Result<IvfPqIndex> {
    if !m.is_normalized() {
        return Err(IndexError::NotNormalized);
    }
    let coarse = kmeans(m, k_c, COARSE_ITERS, seed)?;
    let codebooks = pq_train(m, m_sub, seed)?;
    let codes = pq_encode(m, &codebooks)?;
    let mut inverted_lists = vec![Vec::new(); k_c];
    for (i, &cell) in coarse.assignments.iter().enumerate() {
        inverted_lists[cell as usize].push(id_base + i as u64);
    }
    Ok(IvfPqIndex {
        d: m.d(),
        k_c,
        m_sub,
        id_base,
        n: m.n(),
        coarse_centroids: coarse.centroids,
        codebooks,
        codes,
        inverted_lists,
    })
}

/// Replaces approximate scores with exact cosines against the original
/// full-precision rows (indexed by global id) and re-sorts.
pub fn rescore_exact(
    candidates: &[Candidate],
    full: &EmbeddingMatrix,
    q: &[f32],
) -> Result<Vec<Candidate>> {
    if q.len() != full.d() {
        return Err(IndexError::DimMismatch { expected: full.d(), got: q.len() });
    }
    let mut rescored = Vec::with_capacity(candidates.len());
    for cand in candidates {
        let row = usize::try_from(cand.target_id)
            .ok()
            .filter(|&i| i < full.n())
            .ok_or(IndexError::IdOutOfRange { id: cand.target_id, n: full.n() })?;
        rescored.push(Candidate {
            exact_score: Some(dot(q, full.row(row))),
            ..cand.clone()
        });
    }
    rescored.sort_by(|a, b| {
        b.exact_score
            .unwrap()
            .total_cmp(&a.exact_score.unwrap())
            .then(a.target_id.cmp(&b.target_id))
    });
    Ok(rescored)
}

/// Picks the best exact-scored candidate across shards (ties toward the
/// lower id). Candidates must have been rescored first.
pub fn merge_shards(per_shard_best: &[Candidate]) -> Result<Option<Candidate>> {
    let mut best: Option<&Candidate> = None;
    for cand in per_shard_best {
        let score = cand
            .exact_score
            .ok_or(IndexError::MissingExactScore { id: cand.target_id })?;
        let better = match best {
            None => true,
            Some(b) => {
                let b_score = b.exact_score.unwrap();
                score > b_score || (score == b_score && cand.target_id < b.target_id)
            }
        };
        if better {
            best = Some(cand);
        }
    }
    Ok(best.cloned())
}

/// A set of shards with contiguous global id ranges, plus the full-precision
/// matrix (all shards concatenated) used for exact rescoring.
#[derive(Debug, Clone)]
pub struct ShardSet {
    shards: Vec<IvfPqIndex>,
    full: EmbeddingMatrix,
}

impl ShardSet {
    /// Validates that shard id ranges tile `0..full.n()` in order and share
    /// one dimension.
    pub fn from_parts(shards: Vec<IvfPqIndex>, full: EmbeddingMatrix) -> Result<Self> {
        if !full.is_normalized() {
            return Err(IndexError::NotNormalized);
        }
        let mut expected = 0u64;
        for shard in &shards {
            if shard.d != full.d() {
                return Err(IndexError::ShardDimMismatch(shard.d, full.d()));
            }
            if shard.id_base != expected {
                return Err(IndexError::ShardIdGap { expected, got: shard.id_base });
            }
            expected += shard.n as u64;
        }
        if expected != full.n() as u64 {
            return Err(IndexError::ShardIdGap { expected, got: full.n() as u64 });
        }
        Ok(ShardSet { shards, full })
    }

    pub fn shards(&self) -> &[IvfPqIndex] {
        &self.shards
    }

    pub fn full(&self) -> &EmbeddingMatrix {
        &self.full
    }

    pub fn n(&self) -> usize {
        self.full.n()
    }

    pub fn d(&self) -> usize {
        self.full.d()
    }

    /// Queries every shard, rescores each shard's probed candidates
    /// exactly, and merges to the single best target. `None` when every
    /// probed cell is empty.
    pub fn search(&self, q: &[f32], top_clusters: usize) -> Result<Option<Candidate>> {
        let mut per_shard = Vec::with_capacity(self.shards.len());
        for shard in &self.shards {
            let probed = shard.query(q, top_clusters, usize::MAX)?;
            if probed.is_empty() {
                continue;
            }
            let rescored = rescore_exact(&probed, &self.full, q)?;
            per_shard.push(rescored.into_iter().next().unwrap());
        }
        merge_shards(&per_shard)
    }
}

/// Splits `m` into `n_shards` contiguous, near-equal row ranges (earlier
/// shards take the remainder) and builds one index per range, each on its
/// own seeded stream.
pub fn build_shard_set(
    m: &EmbeddingMatrix,
    n_shards: usize,
    k_c: usize,
    m_sub: usize,
    seed: u64,
) -> Result<ShardSet> {
    if n_shards == 0 || n_shards > m.n() {
        return Err(IndexError::BadShardCount { n_shards, n: m.n() });
    }
    let base = m.n() / n_shards;
    let remainder = m.n() % n_shards;
    let mut shards = Vec::with_capacity(n_shards);
    let mut offset = 0usize;
    for shard_idx in 0..n_shards {
        let len = base + usize::from(shard_idx < remainder);
        let slice = m.slice_rows(offset, offset + len);
        let shard_seed = seed ^ (shard_idx as u64 + 1).wrapping_mul(SHARD_SEED_SALT);
        shards.push(build_index_with_base(&slice, k_c, m_sub, shard_seed, offset as u64)?);
        offset += len;
    }
    ShardSet::from_parts(shards, m.clone())
}
