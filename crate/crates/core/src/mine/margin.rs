//! Margin-based scoring of a candidate pair against its neighborhoods.

use crate::embed::dot;

use super::{MineError, Result};

const NORM_TOLERANCE: f64 = 1e-4;

fn check_unit(what: &'static str, v: &[f32]) -> Result<()> {
    let norm = dot(v, v).sqrt();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(MineError::NormViolation { what, norm });
    }
    Ok(())
}

/// Ratio margin: cosine of the pair over the mean cosine of each side to
/// its `k` nearest neighbors on the other side,
///
/// ```text
/// cos(x,y) / ( Σ_z∈nn_x cos(x,z)/2k  +  Σ_z∈nn_y cos(y,z)/2k )
/// ```
///
/// A score of 1.0 means the pair looks no better than its neighborhoods;
/// well-aligned pairs score above 1. All vectors must be unit-norm and
/// both neighbor lists exactly `k` long. A non-positive denominator
/// (neighbors orthogonal or opposed) is an error, not infinity.
pub fn margin_score(
    x: &[f32],
    y: &[f32],
    nn_x: &[&[f32]],
    nn_y: &[&[f32]],
    k: usize,
) -> Result<f64> {
    if k == 0 {
        return Err(MineError::ZeroK);
    }
    if nn_x.len() != k {
        return Err(MineError::NeighborCount { count: k, got: nn_x.len() });
    }
    if nn_y.len() != k {
        return Err(MineError::NeighborCount { count: k, got: nn_y.len() });
    }
    if x.len() != y.len() {
        return Err(MineError::DimMismatch { left: x.len(), right: y.len() });
    }
    check_unit("x", x)?;
    check_unit("y", y)?;
    for z in nn_x {
        if z.len() != x.len() {
            return Err(MineError::DimMismatch { left: x.len(), right: z.len() });
        }
        check_unit("a neighbor of x", z)?;
    }
    for z in nn_y {
        if z.len() != y.len() {
            return Err(MineError::DimMismatch { left: y.len(), right: z.len() });
        }
        check_unit("a neighbor of y", z)?;
    }

    let two_k = 2.0 * k as f64;
    let denom = nn_x.iter().map(|z| dot(x, z)).sum::<f64>() / two_k
        + nn_y.iter().map(|z| dot(y, z)).sum::<f64>() / two_k;
    if denom <= 0.0 {
        return Err(MineError::ZeroDenominator { denom });
    }
    Ok(dot(x, y) / denom)
}
