//! Bitext mining pipelines: margin scoring, comparable-document mining,
//! monolingual global mining, and refiltering of existing corpora.

mod comparable;
mod config;
mod io;
mod margin;
mod monolingual;
mod refilter;

pub use comparable::mine_comparable;
pub use config::MiningConfig;
pub use io::{format_mining_tsv, parse_bitext_tsv, parse_mining_tsv};
pub use margin::margin_score;
pub use monolingual::{mine_monolingual, unique_targets};
pub use refilter::{filter_existing, retention_percent};

use std::fmt;
use std::str::FromStr;

use crate::filter::Sentence;

/// Errors from the mining pipelines.
#[derive(Debug, thiserror::Error)]
pub enum MineError {
    #[error("margin scoring requires k >= 1")]
    ZeroK,
    #[error("margin scoring requires {count} neighbors, got {got}")]
    NeighborCount { count: usize, got: usize },
    #[error("{what} is not unit-norm (norm {norm})")]
    NormViolation { what: &'static str, norm: f64 },
    #[error("margin denominator {denom} is not positive; neighborhood carries no signal")]
    ZeroDenominator { denom: f64 },
    #[error("vector dimensions differ: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("sentence count {sentences} does not match embedding rows {rows} ({side})")]
    CountMismatch {
        side: &'static str,
        sentences: usize,
        rows: usize,
    },
    #[error("no embedding row for pair with {side} id {id}")]
    MissingEmbedding { side: &'static str, id: u64 },
    #[error("bitext line {line}: {reason}")]
    BitextLine { line: usize, reason: String },
    #[error("invalid mining config: {reason}")]
    Config { reason: String },
    #[error(transparent)]
    Index(#[from] crate::index::IndexError),
}

pub type Result<T> = std::result::Result<T, MineError>;

/// How a pair was mined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MiningMethod {
    /// Monolingual global mining: best cosine over sharded indexes.
    Cosine,
    /// Comparable-document mining: forward–backward margin intersection.
    Margin,
    /// Refiltering of an existing corpus by cosine.
    Refilter,
}

impl MiningMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            MiningMethod::Cosine => "cosine",
            MiningMethod::Margin => "margin",
            MiningMethod::Refilter => "refilter",
        }
    }
}

impl fmt::Display for MiningMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MiningMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cosine" => Ok(MiningMethod::Cosine),
            "margin" => Ok(MiningMethod::Margin),
            "refilter" => Ok(MiningMethod::Refilter),
            other => Err(format!("unknown mining method `{other}`")),
        }
    }
}

/// A mined sentence pair with its alignment score.
#[derive(Debug, Clone, PartialEq)]
pub struct BitextPair {
    pub src: Sentence,
    pub tgt: Sentence,
    pub score: f64,
    pub method: MiningMethod,
}
