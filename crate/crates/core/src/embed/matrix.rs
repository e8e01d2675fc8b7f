//! The in-memory embedding matrix.

use super::{EmbedError, Result};

/// Tolerance for the unit-norm invariant on matrices declared normalized.
const NORM_TOLERANCE: f64 = 1e-4;

/// An n×d matrix of 32-bit floats, row-major. When `normalized` is set,
/// every row is unit-norm within 1e-4 (validated at construction), so dot
/// products are cosines.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    n: usize,
    d: usize,
    data: Vec<f32>,
    normalized: bool,
}

impl EmbeddingMatrix {
    pub fn new(n: usize, d: usize, data: Vec<f32>, normalized: bool) -> Result<Self> {
        if n.checked_mul(d) != Some(data.len()) {
            return Err(EmbedError::ShapeMismatch { n, d, len: data.len() });
        }
        let matrix = EmbeddingMatrix { n, d, data, normalized };
        if normalized {
            for (row, norm) in matrix.row_norms().into_iter().enumerate() {
                if (norm - 1.0).abs() > NORM_TOLERANCE {
                    return Err(EmbedError::NotUnitNorm { row, norm });
                }
            }
        }
        Ok(matrix)
    }

    pub fn from_rows(rows: &[Vec<f32>], d: usize, normalized: bool) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * d);
        for row in rows {
            if row.len() != d {
                return Err(EmbedError::ShapeMismatch {
                    n: rows.len(),
                    d,
                    len: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), d, data, normalized)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f32]> {
        self.data.chunks_exact(self.d)
    }

    fn row_norms(&self) -> Vec<f64> {
        self.rows()
            .map(|row| row.iter().map(|&v| f64::from(v) * f64::from(v)).sum::<f64>().sqrt())
            .collect()
    }

    /// Scales every row to unit norm and sets the flag. A zero row cannot be
    /// scaled and is reported by index.
    pub fn l2_normalize(self) -> Result<Self> {
        let norms = self.row_norms();
        if let Some(row) = norms.iter().position(|&n| n == 0.0) {
            return Err(EmbedError::ZeroRow { row });
        }
        let EmbeddingMatrix { n, d, mut data, .. } = self;
        for (i, norm) in norms.into_iter().enumerate() {
            let inv = 1.0 / norm;
            for v in &mut data[i * d..(i + 1) * d] {
                *v = (f64::from(*v) * inv) as f32;
            }
        }
        Ok(EmbeddingMatrix { n, d, data, normalized: true })
    }

    /// Copies a contiguous row range into a new matrix (used to shard).
    pub fn slice_rows(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.n, "row range {start}..{end} out of bounds");
        EmbeddingMatrix {
            n: end - start,
            d: self.d,
            data: self.data[start * self.d..end * self.d].to_vec(),
            normalized: self.normalized,
        }
    }
}

/// Dot product with an f64 accumulator, sequential and deterministic. On
/// unit-norm rows this is the cosine similarity.
pub fn dot(a: &[f32], b: &[f32]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| f64::from(x) * f64::from(y))
        .sum()
}
