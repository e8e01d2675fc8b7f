//! Dense sentence-embedding matrices and their binary file format.

mod format;
mod matrix;

pub use format::{parse_embf, serialize_embf, EMBF_MAGIC, EMBF_VERSION};
pub use matrix::{dot, EmbeddingMatrix};

use std::path::Path;

/// Errors from embedding construction and the EMBF format.
#[derive(Debug, thiserror::Error)]
pub enum EmbedError {
    #[error("embedding format error at byte {offset}: {reason}")]
    Format { offset: usize, reason: String },
    #[error("row {row} has zero norm and cannot be normalized")]
    ZeroRow { row: usize },
    #[error("row {row} has norm {norm} but the matrix is declared normalized")]
    NotUnitNorm { row: usize, norm: f64 },
    #[error("data length {len} does not match {n} rows of dimension {d}")]
    ShapeMismatch { n: usize, d: usize, len: usize },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, EmbedError>;

/// Reads an EMBF file from disk.
pub fn load_embeddings(path: impl AsRef<Path>) -> Result<EmbeddingMatrix> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| EmbedError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_embf(&bytes)
}

/// Writes an EMBF file to disk.
pub fn save_embeddings(path: impl AsRef<Path>, matrix: &EmbeddingMatrix) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, serialize_embf(matrix)).map_err(|source| EmbedError::Io {
        path: path.display().to_string(),
        source,
    })
}
