//! Sharded IVF-PQ approximate nearest-neighbor search over unit-norm
//! embeddings.
//!
//! A coarse k-means quantizer partitions vectors into inverted lists;
//! product quantization compresses each vector to one byte per subspace.
//! Queries rank coarse cells by cosine, score the probed cells through a
//! per-query lookup table, and are then rescored against the original
//! full-precision vectors.

mod ivf;
mod kmeans;
mod pq;
mod store;

pub use ivf::{
    build_index, build_index_with_base, build_shard_set, merge_shards, rescore_exact, IvfPqIndex,
    ShardSet,
};
pub use kmeans::{kmeans, KmeansOutput};
pub use pq::{pq_decode, pq_encode, pq_train, PqCodebooks};
pub use store::{load_index, parse_index, save_index, serialize_index};

/// Errors from index construction, querying, and persistence.
#[derive(Debug, thiserror::Error)]
pub enum IndexError {
    #[error("k-means requires 1 <= k <= n, got k={k} with n={n}")]
    BadK { k: usize, n: usize },
    #[error("d={d} is not divisible by m_sub={m_sub}")]
    Indivisible { d: usize, m_sub: usize },
    #[error("product quantization needs at least 256 training vectors, got {n}")]
    TooFewVectors { n: usize },
    #[error("dimension mismatch: index expects {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("embeddings must be L2-normalized before indexing")]
    NotNormalized,
    #[error("shard count must satisfy 1 <= shards <= n, got {n_shards} with n={n}")]
    BadShardCount { n_shards: usize, n: usize },
    #[error("candidate id {id} outside the {n} stored vectors")]
    IdOutOfRange { id: u64, n: usize },
    #[error("candidate {id} has no exact score; rescore before merging")]
    MissingExactScore { id: u64 },
    #[error("shards disagree on dimension: {0} vs {1}")]
    ShardDimMismatch(usize, usize),
    #[error("shard id ranges are not contiguous from zero (expected base {expected}, got {got})")]
    ShardIdGap { expected: u64, got: u64 },
    #[error("index file error at byte {offset}: {reason}")]
    Store { offset: usize, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, IndexError>;

/// A retrieval candidate: PQ-approximated score, plus the exact cosine once
/// rescored against full-precision vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub target_id: u64,
    pub approx_score: f64,
    pub exact_score: Option<f64>,
}
