use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeans {
    pub labels: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    /// Sum of squared distances after each assignment step.
    pub inertia: Vec<f64>,
    pub converged: bool,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn normalized(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter().map(|x| x / norm).collect()
    } else {
        v.to_vec()
    }
}

/// Index and squared distance of the nearest centroid (lowest index on ties).
fn nearest(p: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(p, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// Lloyd's algorithm with k-means++ seeding on L2-normalized copies of
/// `vectors`.
///
/// Stops when an assignment step changes nothing or after `max_iters`
/// assignment steps. A cluster that empties out is re-seeded at the point
/// farthest from its current centroid.
pub fn kmeans(vectors: &[Vec<f64>], k: usize, max_iters: usize, seed: u64) -> Result<KMeans> {
    let n = vectors.len();
    if k == 0 || n < k {
        return Err(Error::domain(format!(
            "k-means needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let points: Vec<Vec<f64>> = vectors.iter().map(|v| normalized(v)).collect();
    let mut rng = rng::stream(seed, rng::KMEANS, 0);

    // k-means++ seeding
    let mut centroids = vec![points[rng.gen_range(0..n)].clone()];
    let mut d2: Vec<f64> = points.iter().map(|p| sq_dist(p, &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.gen_range(0.0..total);
            let mut idx = n - 1;
            for (i, &d) in d2.iter().enumerate() {
                if target < d {
                    idx = i;
                    break;
                }
                target -= d;
            }
            idx
        } else {
            rng.gen_range(0..n)
        };
        centroids.push(points[pick].clone());
        for (i, p) in points.iter().enumerate() {
            d2[i] = d2[i].min(sq_dist(p, &centroids[centroids.len() - 1]));
        }
    }

    let dim = points.first().map_or(0, Vec::len);
    let mut labels = vec![usize::MAX; n];
    let mut inertia = Vec::new();
    let mut converged = false;
    for _ in 0..max_iters {
        let mut changed = false;
        let mut total = 0.0;
        let mut dist = vec![0.0; n];
        for (i, p) in points.iter().enumerate() {
            let (c, d) = nearest(p, &centroids);
            if labels[i] != c {
                labels[i] = c;
                changed = true;
            }
            dist[i] = d;
            total += d;
        }
        inertia.push(total);
        if !changed {
            converged = true;
            break;
        }

        let mut sums = vec![vec![0.0; dim]; k];
        let mut sizes = vec![0usize; k];
        for (i, p) in points.iter().enumerate() {
            sizes[labels[i]] += 1;
            for (s, x) in sums[labels[i]].iter_mut().zip(p) {
                *s += x;
            }
        }
        for c in 0..k {
            if sizes[c] > 0 {
                centroids[c] = sums[c].iter().map(|s| s / sizes[c] as f64).collect();
            }
        }
        for c in 0..k {
            if sizes[c] == 0 {
                let far = (0..n)
                    .filter(|&i| sizes[labels[i]] > 1)
                    .max_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(b.cmp(&a)));
                if let Some(i) = far {
                    sizes[labels[i]] -= 1;
                    sizes[c] = 1;
                    labels[i] = c;
                    dist[i] = 0.0;
                    centroids[c] = points[i].clone();
                }
            }
        }
    }
    Ok(KMeans {
        labels,
        centroids,
        inertia,
        converged,
    })
}
