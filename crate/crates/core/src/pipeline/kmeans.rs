use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const MAX_ITER: usize = 300;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult {
    pub labels: Vec<usize>,
    /// Within-cluster sum of squares on the standardised data.
    pub wcss: f64,
}

/// Shifts every column to zero mean and scales it to unit population
/// variance. Constant columns become all zeros.
pub fn standardize(data: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = data.len();
    if n == 0 {
        return Vec::new();
    }
    let cols = data[0].len();
    let mut out = data.to_vec();
    for j in 0..cols {
        let mean = data.iter().map(|r| r[j]).sum::<f64>() / n as f64;
        let var = data.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n as f64;
        let sd = var.sqrt();
        for r in out.iter_mut() {
            r[j] = if sd > 0.0 { (r[j] - mean) / sd } else { 0.0 };
        }
    }
    out
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(x: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    centers
        .iter()
        .enumerate()
        .map(|(c, m)| (c, dist2(x, m)))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
}

fn plus_plus(data: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = data.len();
    let mut chosen = vec![rng.gen_range(0..n)];
    let mut d2: Vec<f64> = data.iter().map(|x| dist2(x, &data[chosen[0]])).collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut r = rng.gen::<f64>() * total;
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if r < w {
                    pick = i;
                    break;
                }
                r -= w;
            }
            pick
        } else {
            // every point coincides with a centre
            (0..n).find(|i| !chosen.contains(i)).expect("k <= n")
        };
        chosen.push(next);
        for (i, x) in data.iter().enumerate() {
            d2[i] = d2[i].min(dist2(x, &data[next]));
        }
    }
    chosen.into_iter().map(|i| data[i].clone()).collect()
}

fn lloyd(data: &[Vec<f64>], mut centers: Vec<Vec<f64>>) -> KMeansResult {
    let (n, k, dim) = (data.len(), centers.len(), data[0].len());
    let mut labels = vec![usize::MAX; n];
    for _ in 0..MAX_ITER {
        let mut changed = false;
        for (i, x) in data.iter().enumerate() {
            let (c, _) = nearest(x, &centers);
            if labels[i] != c {
                labels[i] = c;
                changed = true;
            }
        }
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (x, &c) in data.iter().zip(&labels) {
            counts[c] += 1;
            sums[c].iter_mut().zip(x).for_each(|(s, v)| *s += v);
        }
        for c in 0..k {
            if counts[c] == 0 {
                // reseed an empty cluster with the point farthest from its centre
                let far = (0..n)
                    .filter(|&i| counts[labels[i]] > 1)
                    .max_by(|&a, &b| {
                        dist2(&data[a], &centers[labels[a]])
                            .total_cmp(&dist2(&data[b], &centers[labels[b]]))
                    });
                if let Some(i) = far {
                    counts[labels[i]] -= 1;
                    sums[labels[i]].iter_mut().zip(&data[i]).for_each(|(s, v)| *s -= v);
                    labels[i] = c;
                    counts[c] = 1;
                    sums[c] = data[i].clone();
                    changed = true;
                }
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centers[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
        if !changed {
            break;
        }
    }
    let wcss = data
        .iter()
        .zip(&labels)
        .map(|(x, &c)| dist2(x, &centers[c]))
        .sum();
    KMeansResult { labels, wcss }
}

/// Lloyd's algorithm with k-means++ seeding on column-standardised data,
/// keeping the best of `restarts` runs by within-cluster sum of squares.
/// Deterministic in `(data, k, seed, restarts)`.
pub fn kmeans(data: &[Vec<f64>], k: usize, seed: u64, restarts: usize) -> Result<KMeansResult> {
    if k == 0 {
        return Err(Error::Parameter("k must be >= 1".into()));
    }
    if k > data.len() {
        return Err(Error::Parameter(format!(
            "k = {k} exceeds the number of rows {}",
            data.len()
        )));
    }
    if data.iter().any(|r| r.len() != data[0].len()) {
        return Err(Error::Parameter("rows have different lengths".into()));
    }
    let x = standardize(data);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<KMeansResult> = None;
    for _ in 0..restarts.max(1) {
        let run = lloyd(&x, plus_plus(&x, k, &mut rng));
        if best.as_ref().is_none_or(|b| run.wcss < b.wcss) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one run"))
}

fn choose2(x: u64) -> f64 {
    (x * x.saturating_sub(1) / 2) as f64
}

/// Adjusted Rand index of two labelings of the same items.
///
/// `None` when the index is undefined, i.e. both labelings put every item in
/// one cluster (or every item in its own cluster), or fewer than two items.
pub fn adjusted_rand_index<A, B>(a: &[A], b: &[B]) -> Result<Option<f64>>
where
    A: Ord,
    B: Ord,
{
    if a.len() != b.len() {
        return Err(Error::Parameter(format!(
            "labelings have lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len() as u64;
    let mut table = std::collections::BTreeMap::new();
    let mut rows = std::collections::BTreeMap::new();
    let mut cols = std::collections::BTreeMap::new();
    for (x, y) in a.iter().zip(b) {
        *table.entry((x, y)).or_insert(0u64) += 1;
        *rows.entry(x).or_insert(0u64) += 1;
        *cols.entry(y).or_insert(0u64) += 1;
    }
    let index: f64 = table.values().map(|&c| choose2(c)).sum();
    let sa: f64 = rows.values().map(|&c| choose2(c)).sum();
    let sb: f64 = cols.values().map(|&c| choose2(c)).sum();
    let total = choose2(n);
    if total == 0.0 {
        return Ok(None);
    }
    let expected = sa * sb / total;
    let max = (sa + sb) / 2.0;
    if max == expected {
        return Ok(None);
    }
    Ok(Some((index - expected) / (max - expected)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_obvious_clusters() {
        let data = vec![
            vec![0.0, 0.0],
            vec![0.1, 0.0],
            vec![10.0, 10.0],
            vec![10.1, 10.0],
            vec![0.0, 0.1],
        ];
        let r = kmeans(&data, 2, 1, 5).unwrap();
        assert_eq!(r.labels[0], r.labels[1]);
        assert_eq!(r.labels[0], r.labels[4]);
        assert_eq!(r.labels[2], r.labels[3]);
        assert_ne!(r.labels[0], r.labels[2]);
    }

    #[test]
    fn one_cluster_per_row() {
        let data: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64, (i * i) as f64]).collect();
        let r = kmeans(&data, 6, 3, 4).unwrap();
        let mut l = r.labels.clone();
        l.sort_unstable();
        l.dedup();
        assert_eq!(l.len(), 6);
        assert!(r.wcss.abs() < 1e-12);
        assert!(kmeans(&data, 7, 3, 4).is_err());
        assert!(kmeans(&data, 0, 3, 4).is_err());
    }

    #[test]
    fn deterministic() {
        let data: Vec<Vec<f64>> = (0..30).map(|i| vec![(i % 7) as f64, (i % 3) as f64]).collect();
        assert_eq!(kmeans(&data, 3, 9, 10).unwrap(), kmeans(&data, 3, 9, 10).unwrap());
    }

    #[test]
    fn ari_basics() {
        let a = [0, 0, 1, 1, 2, 2];
        assert_eq!(adjusted_rand_index(&a, &a).unwrap(), Some(1.0));
        let renamed = ["x", "x", "z", "z", "y", "y"];
        assert_eq!(adjusted_rand_index(&a, &renamed).unwrap(), Some(1.0));
        assert!(adjusted_rand_index(&a, &[0, 1]).is_err());
        assert_eq!(adjusted_rand_index(&[0, 0, 0], &[1, 1, 1]).unwrap(), None);
    }

    #[test]
    fn ari_reference_value() {
        // hand-computed: index 2, sa 6, sb 3, C(6,2) 15 -> (2 - 1.2) / (4.5 - 1.2)
        let a = [0, 0, 0, 1, 1, 1];
        let b = [0, 0, 1, 1, 2, 2];
        let v = adjusted_rand_index(&a, &b).unwrap().unwrap();
        assert!((v - 0.8 / 3.3).abs() < 1e-12);
    }

    #[test]
    fn standardize_constant_column() {
        let s = standardize(&[vec![1.0, 5.0], vec![3.0, 5.0]]);
        assert_eq!(s, vec![vec![-1.0, 0.0], vec![1.0, 0.0]]);
    }
}
