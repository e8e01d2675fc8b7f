//! Product quantization: per-subspace 256-centroid codebooks, one byte per
//! subspace.

use rayon::prelude::*;

use crate::embed::{dot, EmbeddingMatrix};

use super::{kmeans, IndexError, Result};

/// Codebook entries per subspace; one u8 code addresses exactly one entry.
pub const PQ_CENTROIDS: usize = 256;
const TRAIN_ITERS: usize = 25;

/// Per-subspace codebooks: `m_sub` subspaces × 256 centroids × `dsub`
/// floats. Vectors are quantized raw (not as IVF residuals).
#[derive(Debug, Clone, PartialEq)]
pub struct PqCodebooks {
    m_sub: usize,
    dsub: usize,
    centroids: Vec<f32>,
}

impl PqCodebooks {
    pub(crate) fn from_raw(m_sub: usize, dsub: usize, centroids: Vec<f32>) -> Self {
        assert_eq!(centroids.len(), m_sub * PQ_CENTROIDS * dsub);
        PqCodebooks { m_sub, dsub, centroids }
    }

    pub fn m_sub(&self) -> usize {
        self.m_sub
    }

    pub fn dsub(&self) -> usize {
        self.dsub
    }

    /// Full vector dimension.
    pub fn d(&self) -> usize {
        self.m_sub * self.dsub
    }

    pub(crate) fn raw(&self) -> &[f32] {
        &self.centroids
    }

    /// Centroid `code` of subspace `sub`.
    fn entry(&self, sub: usize, code: usize) -> &[f32] {
        let start = (sub * PQ_CENTROIDS + code) * self.dsub;
        &self.centroids[start..start + self.dsub]
    }

    /// Per-query lookup table: dot(query subvector, centroid) for every
    /// subspace × code. Scoring a stored vector is then `m_sub` table adds.
    pub fn lookup_table(&self, q: &[f32]) -> Result<Vec<f64>> {
        if q.len() != self.d() {
            return Err(IndexError::DimMismatch { expected: self.d(), got: q.len() });
        }
        let mut table = vec![0.0f64; self.m_sub * PQ_CENTROIDS];
        for sub in 0..self.m_sub {
            let q_sub = &q[sub * self.dsub..(sub + 1) * self.dsub];
            for code in 0..PQ_CENTROIDS {
                table[sub * PQ_CENTROIDS + code] = dot(q_sub, self.entry(sub, code));
            }
        }
        Ok(table)
    }

    /// Approximate dot product of the query behind `table` with one encoded
    /// row.
    pub fn score_codes(&self, codes_row: &[u8], table: &[f64]) -> f64 {
        codes_row
            .iter()
            .enumerate()
            .map(|(sub, &code)| table[sub * PQ_CENTROIDS + code as usize])
            .sum()
    }
}

/// Trains one 256-centroid k-means per subspace. Deterministic per seed;
/// each subspace trains on an independently salted stream.
pub fn pq_train(m: &EmbeddingMatrix, m_sub: usize, seed: u64) -> Result<PqCodebooks> {
    let d = m.d();
    let n = m.n();
    if m_sub == 0 || !d.is_multiple_of(m_sub) {
        return Err(IndexError::Indivisible { d, m_sub });
    }
    if n < PQ_CENTROIDS {
        return Err(IndexError::TooFewVectors { n });
    }
    let dsub = d / m_sub;
    let mut centroids = Vec::with_capacity(m_sub * PQ_CENTROIDS * dsub);
    for sub in 0..m_sub {
        let rows: Vec<Vec<f32>> = (0..n)
            .map(|i| m.row(i)[sub * dsub..(sub + 1) * dsub].to_vec())
            .collect();
        let sub_matrix = EmbeddingMatrix::from_rows(&rows, dsub, false)
            .expect("subspace rows share dsub");
        let sub_seed = seed ^ (sub as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let out = kmeans(&sub_matrix, PQ_CENTROIDS, TRAIN_ITERS, sub_seed)?;
        centroids.extend_from_slice(&out.centroids);
    }
    Ok(PqCodebooks::from_raw(m_sub, dsub, centroids))
}

/// Encodes every row as its nearest centroid per subspace (ties toward the
/// lower code). Result is n×m_sub bytes, row-major.
pub fn pq_encode(m: &EmbeddingMatrix, codebooks: &PqCodebooks) -> Result<Vec<u8>> {
    if m.d() != codebooks.d() {
        return Err(IndexError::DimMismatch { expected: codebooks.d(), got: m.d() });
    }
    let dsub = codebooks.dsub();
    let codes: Vec<u8> = (0..m.n())
        .into_par_iter()
        .flat_map_iter(|i| {
            let row = m.row(i);
            (0..codebooks.m_sub()).map(move |sub| {
                let x = &row[sub * dsub..(sub + 1) * dsub];
                let mut best = 0u8;
                let mut best_dist = f64::INFINITY;
                for code in 0..PQ_CENTROIDS {
                    let c = codebooks.entry(sub, code);
                    let dist: f64 = x
                        .iter()
                        .zip(c)
                        .map(|(&a, &b)| {
                            let diff = f64::from(a) - f64::from(b);
                            diff * diff
                        })
                        .sum();
                    if dist < best_dist {
                        best_dist = dist;
                        best = code as u8;
                    }
                }
                best
            })
        })
        .collect();
    Ok(codes)
}

/// Reconstructs vectors by concatenating the addressed centroids.
pub fn pq_decode(codes: &[u8], codebooks: &PqCodebooks) -> Result<EmbeddingMatrix> {
    let m_sub = codebooks.m_sub();
    if m_sub == 0 || !codes.len().is_multiple_of(m_sub) {
        return Err(IndexError::DimMismatch { expected: m_sub, got: codes.len() });
    }
    let n = codes.len() / m_sub;
    let mut data = Vec::with_capacity(n * codebooks.d());
    for row in codes.chunks_exact(m_sub) {
        for (sub, &code) in row.iter().enumerate() {
            data.extend_from_slice(codebooks.entry(sub, code as usize));
        }
    }
    Ok(EmbeddingMatrix::new(n, codebooks.d(), data, false).expect("shape by construction"))
}
