//! Correlation between two score series — Pearson's r for linear
//! agreement and Kendall's tau-b for rank agreement with tie handling —
//! used to compare automatic metrics against human judgments.

use super::{MetricsError, Result};

fn check_lengths(xs: &[f64], ys: &[f64]) -> Result<usize> {
    if xs.len() != ys.len() {
        return Err(MetricsError::LengthMismatch { left: xs.len(), right: ys.len() });
    }
    if xs.len() < 2 {
        return Err(MetricsError::TooFewPoints { n: xs.len() });
    }
    Ok(xs.len())
}

/// Pearson correlation coefficient, clamped to [-1, 1] against rounding
/// spill. A constant series has no linear correlation and is rejected.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = check_lengths(xs, ys)? as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x) * (x - mean_x);
        var_y += (y - mean_y) * (y - mean_y);
    }
    if var_x == 0.0 {
        return Err(MetricsError::Degenerate { what: "first series is constant" });
    }
    if var_y == 0.0 {
        return Err(MetricsError::Degenerate { what: "second series is constant" });
    }
    Ok((cov / (var_x * var_y).sqrt()).clamp(-1.0, 1.0))
}

/// Kendall's tau-b: concordant minus discordant pairs over the geometric
/// mean of non-tied pair counts per side. A side with every value tied
/// leaves no ordered pairs and is rejected.
pub fn kendall_tau_b(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = check_lengths(xs, ys)?;
    let mut concordant = 0u64;
    let mut discordant = 0u64;
    let mut tied_x = 0u64;
    let mut tied_y = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            let dx = xs[i].total_cmp(&xs[j]);
            let dy = ys[i].total_cmp(&ys[j]);
            let x_tied = dx == std::cmp::Ordering::Equal;
            let y_tied = dy == std::cmp::Ordering::Equal;
            if x_tied {
                tied_x += 1;
            }
            if y_tied {
                tied_y += 1;
            }
            if !x_tied && !y_tied {
                if dx == dy {
                    concordant += 1;
                } else {
                    discordant += 1;
                }
            }
        }
    }
    let n0 = (n * (n - 1) / 2) as f64;
    let denom_x = n0 - tied_x as f64;
    let denom_y = n0 - tied_y as f64;
    if denom_x == 0.0 {
        return Err(MetricsError::Degenerate { what: "first series is constant" });
    }
    if denom_y == 0.0 {
        return Err(MetricsError::Degenerate { what: "second series is constant" });
    }
    let numerator = concordant as f64 - discordant as f64;
    Ok((numerator / (denom_x * denom_y).sqrt()).clamp(-1.0, 1.0))
}

/// Both correlations for the same series, as (Pearson, Kendall tau-b).
pub fn rank_correlations(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    Ok((pearson(xs, ys)?, kendall_tau_b(xs, ys)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_series_correlate_perfectly() {
        let xs = [1.0, 2.5, 4.0, 7.0, 11.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 3.0).collect();
        let (r, tau) = rank_correlations(&xs, &ys).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        assert_eq!(tau, 1.0);
    }

    #[test]
    fn reversed_series_correlate_perfectly_negatively() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [8.0, 6.0, 5.0, 1.0];
        let (r, tau) = rank_correlations(&xs, &ys).unwrap();
        assert!(r < -0.9);
        assert_eq!(tau, -1.0);
    }

    #[test]
    fn pearson_matches_a_hand_computation() {
        // xs [1,2,3], ys [1,2,4]: r = 3 / sqrt(2 * 14/3).
        let r = pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap();
        let expected = 3.0 / (2.0 * 14.0 / 3.0_f64).sqrt();
        assert!((r - expected).abs() < 1e-12);
    }

    #[test]
    fn tau_matches_a_hand_enumeration() {
        // One discordant pair out of six: tau = (5 - 1) / 6.
        let tau = kendall_tau_b(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((tau - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn tau_with_ties_matches_an_independent_oracle() {
        let xs = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0];
        let ys = [2.0, 7.0, 1.0, 7.0, 8.0, 2.0, 8.0, 1.0];
        // Sign-product enumeration with tie groups counted from value
        // multiplicities, written independently of the implementation.
        let n = xs.len();
        let sign = |d: f64| {
            if d > 0.0 {
                1.0
            } else if d < 0.0 {
                -1.0
            } else {
                0.0
            }
        };
        let mut c_minus_d = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                c_minus_d += sign(xs[i] - xs[j]) * sign(ys[i] - ys[j]);
            }
        }
        let tie_pairs = |vals: &[f64]| -> f64 {
            let mut groups: std::collections::BTreeMap<u64, f64> = std::collections::BTreeMap::new();
            for v in vals {
                *groups.entry(v.to_bits()).or_insert(0.0) += 1.0;
            }
            groups.values().map(|t| t * (t - 1.0) / 2.0).sum()
        };
        let n0 = (n * (n - 1) / 2) as f64;
        let expected =
            c_minus_d / ((n0 - tie_pairs(&xs)) * (n0 - tie_pairs(&ys))).sqrt();
        let tau = kendall_tau_b(&xs, &ys).unwrap();
        assert!((tau - expected).abs() < 1e-12, "got {tau}, want {expected}");
    }

    #[test]
    fn constant_series_are_degenerate() {
        let flat = [5.0, 5.0, 5.0];
        let vary = [1.0, 2.0, 3.0];
        assert!(matches!(pearson(&flat, &vary), Err(MetricsError::Degenerate { .. })));
        assert!(matches!(pearson(&vary, &flat), Err(MetricsError::Degenerate { .. })));
        assert!(matches!(kendall_tau_b(&flat, &vary), Err(MetricsError::Degenerate { .. })));
        assert!(matches!(kendall_tau_b(&vary, &flat), Err(MetricsError::Degenerate { .. })));
    }

    #[test]
    fn rejects_short_and_mismatched_series() {
        assert!(matches!(
            pearson(&[1.0], &[2.0]),
            Err(MetricsError::TooFewPoints { n: 1 })
        ));
        assert!(matches!(
            kendall_tau_b(&[1.0, 2.0], &[2.0]),
            Err(MetricsError::LengthMismatch { left: 2, right: 1 })
        ));
    }
}
