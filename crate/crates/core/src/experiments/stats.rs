//! Sample statistics used by the experiments.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Unbiased; 0 for a single value.
    pub variance: f64,
    pub stderr: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
}

pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let variance = if n > 1 {
        values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(Summary {
        count: n,
        mean,
        variance,
        stderr: (variance / n as f64).sqrt(),
        q25: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        q75: quantile_sorted(&sorted, 0.75),
    })
}

/// Quantile by linear interpolation between order statistics at position
/// `q (n - 1)`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Standard error of a sample quantile, read off the spread of the order
/// statistics one binomial standard deviation either side of `q`.
pub fn quantile_stderr(sorted: &[f64], q: f64) -> f64 {
    let delta = (q * (1.0 - q) / sorted.len() as f64).sqrt();
    0.5 * (quantile_sorted(sorted, q + delta) - quantile_sorted(sorted, q - delta))
}

/// Exact Wasserstein-1 distance between two empirical distributions: the
/// integral of `|F_a^{-1}(u) - F_b^{-1}(u)|` over `u` in `[0, 1]`.
pub fn wasserstein1(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    if a.len() == b.len() {
        return Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64);
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut u = 0.0;
    let mut total = 0.0;
    while i < a.len() && j < b.len() {
        let next_a = (i + 1) as f64 / na;
        let next_b = (j + 1) as f64 / nb;
        let next = next_a.min(next_b);
        total += (next - u) * (a[i] - b[j]).abs();
        u = next;
        if next_a <= next {
            i += 1;
        }
        if next_b <= next {
            j += 1;
        }
    }
    Ok(total)
}

/// Kolmogorov-Smirnov distance between the sample and the standard normal.
pub fn ks_standard_normal(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let normal = Normal::standard();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = normal.cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max))
}

/// Column means and the unbiased covariance of columns `i` and `j` of a
/// replicate-by-grid matrix, with the normal-theory standard error
/// `sqrt((var_i var_j + cov^2) / R)`.
pub(crate) struct ColumnStats {
    means: Vec<f64>,
    rows: usize,
}

impl ColumnStats {
    pub(crate) fn new(data: &[Vec<f64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let means = (0..cols)
            .map(|c| data.iter().map(|r| r[c]).sum::<f64>() / rows as f64)
            .collect();
        Self { means, rows }
    }

    pub(crate) fn mean(&self, c: usize) -> f64 {
        self.means[c]
    }

    pub(crate) fn cov(&self, data: &[Vec<f64>], i: usize, j: usize) -> f64 {
        if self.rows < 2 {
            return 0.0;
        }
        let (mi, mj) = (self.means[i], self.means[j]);
        data.iter().map(|r| (r[i] - mi) * (r[j] - mj)).sum::<f64>() / (self.rows - 1) as f64
    }

    pub(crate) fn cov_stderr(&self, data: &[Vec<f64>], i: usize, j: usize) -> (f64, f64) {
        let c = self.cov(data, i, j);
        let vi = self.cov(data, i, i);
        let vj = self.cov(data, j, j);
        (c, ((vi * vj + c * c) / self.rows as f64).sqrt())
    }
}

/// Standard error of the unbiased sample variance, `sqrt((m4 - s^4) / n)`.
pub(crate) fn variance_stderr(values: &[f64], mean: f64, variance: f64) -> f64 {
    let n = values.len() as f64;
    let m4 = values.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    ((m4 - variance * variance).max(0.0) / n).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn summary_examples() {
        let s = summarize(&[2.0, 2.0, 2.0]).unwrap();
        assert_eq!((s.mean, s.variance), (2.0, 0.0));
        let s = summarize(&[0.0, 1.0]).unwrap();
        assert_eq!((s.mean, s.variance), (0.5, 0.5));
        let s = summarize(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(s.median, 2.5);
        assert_eq!(s.q25, 1.75);
        let s = summarize(&[7.0]).unwrap();
        assert_eq!((s.variance, s.median), (0.0, 7.0));
        assert_eq!(summarize(&[]), Err(Error::EmptySample));
    }

    #[test]
    fn wasserstein_examples() {
        assert_eq!(wasserstein1(&[0.0, 1.0], &[1.0, 2.0]).unwrap(), 1.0);
        assert_eq!(
            wasserstein1(&[3.0, 1.0, 2.0], &[1.0, 2.0, 3.0]).unwrap(),
            0.0
        );
        // {0, 1} vs {0, 0.5, 1}: quantile functions differ by 0.5 on (1/3, 2/3).
        let w = wasserstein1(&[0.0, 1.0], &[0.0, 0.5, 1.0]).unwrap();
        assert!((w - 0.5 / 3.0).abs() < 1e-15);
        assert!(wasserstein1(&[], &[1.0]).is_err());
    }

    #[test]
    fn ks_of_grid_quantiles_is_small() {
        let normal = Normal::standard();
        let xs: Vec<f64> = (0..1000)
            .map(|i| normal.inverse_cdf((i as f64 + 0.5) / 1000.0))
            .collect();
        let d = ks_standard_normal(&xs).unwrap();
        assert!((d - 0.0005).abs() < 1e-9, "{d}");
        assert!(ks_standard_normal(&[10.0; 10]).unwrap() > 0.99);
    }

    #[test]
    fn column_covariance() {
        let data = vec![vec![1.0, 2.0], vec![3.0, 6.0], vec![5.0, 10.0]];
        let cs = ColumnStats::new(&data);
        assert_eq!(cs.mean(1), 6.0);
        assert_eq!(cs.cov(&data, 0, 0), 4.0);
        assert_eq!(cs.cov(&data, 0, 1), 8.0);
    }

    proptest! {
        #[test]
        fn wasserstein_shift(xs in prop::collection::vec(-10.0..10.0f64, 1..40), c in -5.0..5.0f64) {
            let ys: Vec<f64> = xs.iter().map(|x| x + c).collect();
            prop_assert!((wasserstein1(&xs, &ys).unwrap() - c.abs()).abs() < 1e-9);
        }

        #[test]
        fn wasserstein_symmetric_and_matches_duplicated_sample(
            xs in prop::collection::vec(-10.0..10.0f64, 1..30),
            ys in prop::collection::vec(-10.0..10.0f64, 1..30),
        ) {
            let a = wasserstein1(&xs, &ys).unwrap();
            prop_assert!((a - wasserstein1(&ys, &xs).unwrap()).abs() < 1e-9);
            let doubled: Vec<f64> = xs.iter().chain(&xs).copied().collect();
            prop_assert!((a - wasserstein1(&doubled, &ys).unwrap()).abs() < 1e-9);
        }

        #[test]
        fn quantiles_are_monotone(xs in prop::collection::vec(-10.0..10.0f64, 1..40)) {
            let s = summarize(&xs).unwrap();
            prop_assert!(s.q25 <= s.median && s.median <= s.q75);
        }
    }
}
