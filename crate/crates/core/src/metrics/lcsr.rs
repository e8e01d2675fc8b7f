//! Longest-common-subsequence ratio between sentence pairs, a cheap
//! surface-similarity signal for audit sampling of mined bitext.

use rayon::prelude::*;

use super::{MetricsError, Result};

/// Character-level LCS length divided by the longer side's character
/// count. Two empty strings are identical and score 1.
pub fn lcsr(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut curr = vec![0usize; b.len() + 1];
    for &ca in &a {
        for (j, &cb) in b.iter().enumerate() {
            curr[j + 1] = if ca == cb {
                prev[j] + 1
            } else {
                prev[j + 1].max(curr[j])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()] as f64 / longest as f64
}

/// Mean LCS ratio over sentence pairs.
pub fn avg_lcsr(pairs: &[(String, String)]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(MetricsError::EmptyPairs);
    }
    let ratios: Vec<f64> = pairs.par_iter().map(|(a, b)| lcsr(a, b)).collect();
    Ok(ratios.iter().sum::<f64>() / ratios.len() as f64)
}
