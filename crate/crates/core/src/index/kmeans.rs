//! Lloyd's k-means with k-means++ initialization.
//!
//! Deterministic for a fixed seed: initialization draws from a seeded
//! ChaCha8 stream, assignment is an order-independent parallel map, and
//! centroid accumulation is sequential (float addition is not associative,
//! so a parallel reduction would let thread scheduling change the result).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::embed::EmbeddingMatrix;

use super::{IndexError, Result};

/// Cluster centroids plus the final assignment and the cost trace.
#[derive(Debug, Clone)]
pub struct KmeansOutput {
    /// k×d row-major centroids.
    pub centroids: Vec<f32>,
    pub k: usize,
    pub d: usize,
    /// Nearest centroid per input row, under the final centroids.
    pub assignments: Vec<u32>,
    /// Within-cluster sum of squares measured at each assignment step
    /// (`iters + 1` entries); non-increasing.
    pub cost_history: Vec<f64>,
}

fn l2_dist2(a: &[f32], b: &[f32]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let diff = f64::from(x) - f64::from(y);
            diff * diff
        })
        .sum()
}

/// k-means++ seeding: D²-weighted draws from the seeded stream. Points
/// coinciding with a chosen centroid have weight zero and are never redrawn;
/// if every remaining point has weight zero (duplicates), the lowest
/// unchosen index is taken.
fn seed_centroids(
    m: &EmbeddingMatrix,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<f32>, Vec<bool>) {
    let n = m.n();
    let d = m.d();
    let mut centroids = Vec::with_capacity(k * d);
    let mut chosen = vec![false; n];

    let first = rng.random_range(0..n);
    centroids.extend_from_slice(m.row(first));
    chosen[first] = true;
    let mut dist2: Vec<f64> = (0..n).map(|i| l2_dist2(m.row(i), m.row(first))).collect();

    for _ in 1..k {
        let total: f64 = dist2.iter().sum();
        let pick = if total > 0.0 {
            let mut u = rng.random::<f64>() * total;
            let mut picked = None;
            for (i, &w) in dist2.iter().enumerate() {
                if w <= 0.0 || chosen[i] {
                    continue;
                }
                u -= w;
                if u <= 0.0 {
                    picked = Some(i);
                    break;
                }
            }
            // Rounding may leave u marginally positive after the last
            // positive weight; fall back to the last weighted point.
            picked.unwrap_or_else(|| {
                dist2
                    .iter()
                    .enumerate()
                    .rev()
                    .find(|&(i, &w)| w > 0.0 && !chosen[i])
                    .map(|(i, _)| i)
                    .expect("total weight positive implies a weighted point")
            })
        } else {
            chosen.iter().position(|&c| !c).expect("k <= n leaves unchosen points")
        };
        chosen[pick] = true;
        let row = m.row(pick);
        centroids.extend_from_slice(row);
        for (i, slot) in dist2.iter_mut().enumerate() {
            let dist = l2_dist2(m.row(i), row);
            if dist < *slot {
                *slot = dist;
            }
        }
    }
    (centroids, chosen)
}

/// Runs `iters` Lloyd iterations of k-means over the rows of `m`.
/// Assignment ties break toward the lowest centroid id; empty clusters are
/// reseeded from the point farthest from its centroid.
pub fn kmeans(m: &EmbeddingMatrix, k: usize, iters: usize, seed: u64) -> Result<KmeansOutput> {
    let n = m.n();
    let d = m.d();
    if k == 0 || k > n {
        return Err(IndexError::BadK { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut centroids, _) = seed_centroids(m, k, &mut rng);

    let mut assignments: Vec<u32> = Vec::new();
    let mut cost_history = Vec::with_capacity(iters + 1);

    for iteration in 0..=iters {
        // Assignment: independent per point, so the parallel map is
        // deterministic.
        let assigned: Vec<(u32, f64)> = (0..n)
            .into_par_iter()
            .map(|i| {
                let row = m.row(i);
                let mut best = 0u32;
                let mut best_dist = f64::INFINITY;
                for c in 0..k {
                    let dist = l2_dist2(row, &centroids[c * d..(c + 1) * d]);
                    if dist < best_dist {
                        best_dist = dist;
                        best = c as u32;
                    }
                }
                (best, best_dist)
            })
            .collect();
        assignments = assigned.iter().map(|&(c, _)| c).collect();
        let mut point_dist2: Vec<f64> = assigned.iter().map(|&(_, dist)| dist).collect();
        cost_history.push(point_dist2.iter().sum());
        if iteration == iters {
            break;
        }

        // Update: sequential accumulation keeps the float sums reproducible.
        let mut sums = vec![0.0f64; k * d];
        let mut counts = vec![0usize; k];
        for (i, &c) in assignments.iter().enumerate() {
            let c = c as usize;
            counts[c] += 1;
            for (slot, &v) in sums[c * d..(c + 1) * d].iter_mut().zip(m.row(i)) {
                *slot += f64::from(v);
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                continue;
            }
            let inv = 1.0 / counts[c] as f64;
            for (slot, &sum) in centroids[c * d..(c + 1) * d].iter_mut().zip(&sums[c * d..]) {
                *slot = (sum * inv) as f32;
            }
        }
        // Reseed each empty cluster from the point currently farthest from
        // its centroid (ties toward the lowest index); zeroing its distance
        // keeps later empty clusters from picking the same point.
        for c in 0..k {
            if counts[c] > 0 {
                continue;
            }
            let farthest = point_dist2
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
                .map(|(i, _)| i)
                .expect("n >= 1");
            centroids[c * d..(c + 1) * d].copy_from_slice(m.row(farthest));
            point_dist2[farthest] = 0.0;
        }
    }

    Ok(KmeansOutput {
        centroids,
        k,
        d,
        assignments,
        cost_history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;

    fn matrix(rows: &[Vec<f32>]) -> EmbeddingMatrix {
        EmbeddingMatrix::from_rows(rows, rows[0].len(), false).unwrap()
    }

    /// Standard normal draw via Box–Muller.
    fn gauss(rng: &mut impl Rng) -> f64 {
        let u1: f64 = rng.random::<f64>().max(1e-12);
        let u2: f64 = rng.random();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    #[test]
    fn k_equal_n_reproduces_the_points() {
        let rows = vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
            vec![0.0, -1.0],
        ];
        let m = matrix(&rows);
        let out = kmeans(&m, 4, 25, 7).unwrap();
        assert_eq!(*out.cost_history.last().unwrap(), 0.0);
        // Every input point coincides with some centroid.
        for row in &rows {
            let hit = (0..out.k).any(|c| out.centroids[c * 2..c * 2 + 2] == row[..]);
            assert!(hit, "point {row:?} lost");
        }
    }

    #[test]
    fn two_blobs_recover_their_means() {
        let mut rng = StdRng::seed_from_u64(11);
        let centers = [[2.0f64, 0.0], [-2.0, 1.0]];
        let mut rows = Vec::new();
        for i in 0..200 {
            let c = centers[i % 2];
            rows.push(vec![
                (c[0] + 0.05 * gauss(&mut rng)) as f32,
                (c[1] + 0.05 * gauss(&mut rng)) as f32,
            ]);
        }
        let m = matrix(&rows);
        let out = kmeans(&m, 2, 25, 3).unwrap();
        // Each sample mean must be within 0.1 of some learned centroid.
        for c in centers {
            let close = (0..2).any(|j| {
                let learned = &out.centroids[j * 2..j * 2 + 2];
                let dx = f64::from(learned[0]) - c[0];
                let dy = f64::from(learned[1]) - c[1];
                (dx * dx + dy * dy).sqrt() < 0.1
            });
            assert!(close, "no centroid near blob mean {c:?}");
        }
    }

    #[test]
    fn cost_never_increases() {
        let mut rng = StdRng::seed_from_u64(5);
        let rows: Vec<Vec<f32>> = (0..120)
            .map(|_| (0..6).map(|_| gauss(&mut rng) as f32).collect())
            .collect();
        let m = matrix(&rows);
        let out = kmeans(&m, 8, 25, 42).unwrap();
        assert_eq!(out.cost_history.len(), 26);
        for pair in out.cost_history.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-9, "cost rose: {pair:?}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let mut rng = StdRng::seed_from_u64(9);
        let rows: Vec<Vec<f32>> = (0..80)
            .map(|_| (0..4).map(|_| gauss(&mut rng) as f32).collect())
            .collect();
        let m = matrix(&rows);
        let a = kmeans(&m, 5, 25, 123).unwrap();
        let b = kmeans(&m, 5, 25, 123).unwrap();
        assert_eq!(a.centroids, b.centroids);
        assert_eq!(a.assignments, b.assignments);
        let c = kmeans(&m, 5, 25, 124).unwrap();
        assert_ne!(a.centroids, c.centroids);
    }

    #[test]
    fn rejects_bad_k() {
        let m = matrix(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(matches!(kmeans(&m, 0, 5, 1), Err(IndexError::BadK { .. })));
        assert!(matches!(kmeans(&m, 3, 5, 1), Err(IndexError::BadK { .. })));
    }

    #[test]
    fn survives_duplicate_points() {
        // More clusters than distinct points: duplicates zero out the
        // k-means++ weights and force the fallback paths.
        let rows = vec![vec![1.0f32, 0.0]; 5]
            .into_iter()
            .chain(vec![vec![0.0f32, 1.0]; 5])
            .collect::<Vec<_>>();
        let m = matrix(&rows);
        let out = kmeans(&m, 4, 10, 2).unwrap();
        assert_eq!(out.assignments.len(), 10);
        assert!(*out.cost_history.last().unwrap() <= 1e-12);
    }
}
