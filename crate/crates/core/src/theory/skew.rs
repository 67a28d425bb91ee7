//! The asymmetric Bernoulli model: skewed digit paths, their common-prefix
//! index and the limit covariance.
//!
//! Under bit probability `p` the unit interval splits at `1 - p` instead of
//! `1/2`; the skew digits `g(t, k)` record which side `t` falls on at each
//! level and `h(t, k)` is the rescaled position inside the chosen side.

use super::prefix::{PrefixLen, PREFIX_CAP};

/// Skew digits `g(t, 1..=K)` and remainders `h(t, 0..=K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewPath {
    pub p: f64,
    pub digits: Vec<u8>,
    pub remainders: Vec<f64>,
}

#[derive(Debug, Clone)]
struct SkewDigits {
    h: f64,
    p: f64,
}

impl Iterator for SkewDigits {
    type Item = (u8, f64);

    fn next(&mut self) -> Option<(u8, f64)> {
        let q = 1.0 - self.p;
        let (g, h) = if self.h < q {
            (0, self.h / q)
        } else {
            (1, (self.h - q) / self.p)
        };
        self.h = h.clamp(0.0, 1.0);
        Some((g, self.h))
    }
}

fn skew_digits(t: f64, p: f64) -> impl Iterator<Item = u8> {
    SkewDigits { h: t, p }.map(|(g, _)| g)
}

pub fn skew_path(t: f64, p: f64, k: usize) -> SkewPath {
    let mut digits = Vec::with_capacity(k);
    let mut remainders = Vec::with_capacity(k + 1);
    remainders.push(t);
    for (g, h) in (SkewDigits { h: t, p }).take(k) {
        digits.push(g);
        remainders.push(h);
    }
    SkewPath {
        p,
        digits,
        remainders,
    }
}

/// `r(s, t)`: number of leading skew digits `s` and `t` share.
pub fn r_index(s: f64, t: f64, p: f64, cap: usize) -> PrefixLen {
    skew_digits(s, p)
        .zip(skew_digits(t, p))
        .take(cap)
        .position(|(x, y)| x != y)
        .map_or(PrefixLen::Unbounded, PrefixLen::Finite)
}

/// Affine mean function `m(t) = (2p - 1)/(p(1 - p)) t + 1/p`.
pub fn mean_asyb(t: f64, p: f64) -> f64 {
    (2.0 * p - 1.0) / (p * (1.0 - p)) * t + 1.0 / p
}

/// Limit covariance of the asymmetric Bernoulli model,
/// `-prod_{k<=r} p[g_k] + sum_{k<=r} prod_{j<=k} p[g_j] / p[1 - g_k]`.
///
/// For `r = inf` the product vanishes and the series is cut where the
/// geometric tail bound `p_v^K / (1 - p_v)^2` drops below `tol`.
pub fn cov_asyb(s: f64, t: f64, p: f64, tol: f64) -> f64 {
    let pv = p.max(1.0 - p);
    let r = r_index(s, t, p, PREFIX_CAP);
    let terms = match r {
        PrefixLen::Finite(r) => r,
        PrefixLen::Unbounded => series_depth(pv, tol),
    };
    let weight = |g: u8| if g == 0 { 1.0 - p } else { p };
    let mut prod = 1.0;
    let mut sum = 0.0;
    for g in skew_digits(t, p).take(terms) {
        prod *= weight(g);
        sum += prod / weight(1 - g);
    }
    match r {
        PrefixLen::Finite(_) => sum - prod,
        PrefixLen::Unbounded => sum,
    }
}

fn series_depth(pv: f64, tol: f64) -> usize {
    let tol = tol.max(f64::MIN_POSITIVE);
    let k = ((tol * (1.0 - pv).powi(2)).ln() / pv.ln()).ceil();
    (k.max(1.0) as usize).min(100_000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::prefix::{cov_uniform, lcp};
    use proptest::prelude::*;

    #[test]
    fn skew_path_examples() {
        let z = skew_path(0.0, 0.3, 10);
        assert!(z.digits.iter().all(|&g| g == 0));
        assert!(z.remainders.iter().all(|&h| h == 0.0));

        let path = skew_path(0.5, 0.7, 3);
        assert_eq!(path.digits, [1, 0, 1]);
        assert_eq!(path.remainders[0], 0.5);
        assert!((path.remainders[1] - 0.2 / 0.7).abs() < 1e-15);
        assert!((path.remainders[1] - 0.285714).abs() < 1e-6);
    }

    #[test]
    fn r_index_examples() {
        assert_eq!(r_index(0.42, 0.42, 0.7, PREFIX_CAP), PrefixLen::Unbounded);
        assert_eq!(r_index(0.1, 0.2, 0.7, PREFIX_CAP), PrefixLen::Finite(2));
        assert_eq!(skew_path(0.1, 0.7, 3).digits, [0, 1, 0]);
        assert_eq!(skew_path(0.2, 0.7, 3).digits, [0, 1, 1]);
    }

    #[test]
    fn cov_asyb_examples() {
        let v = cov_asyb(0.0, 0.0, 0.7, 1e-12);
        assert!((v - 0.3 / 0.49).abs() < 1e-11);
        assert!((v - 0.612245).abs() < 1e-6);
        // r = 0: empty product minus empty sum.
        assert_eq!(cov_asyb(0.1, 0.9, 0.7, 1e-12), -1.0);
        assert_eq!(cov_asyb(0.1, 0.9, 0.2, 1e-12), -1.0);
        // t = 1 has all skew digits 1: variance p / (1 - p)^2.
        assert!((cov_asyb(1.0, 1.0, 0.7, 1e-12) - 0.7 / 0.09).abs() < 1e-10);
    }

    #[test]
    fn mean_asyb_examples() {
        assert_eq!(mean_asyb(0.37, 0.5), 2.0);
        assert!((mean_asyb(0.0, 0.7) - 1.428571428571).abs() < 1e-11);
        assert!((mean_asyb(1.0, 0.7) - 1.0 / 0.3).abs() < 1e-12);
        assert!((mean_asyb(0.2, 0.7) - 1.809524).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn half_reduces_to_binary_digits(t in 0.0..=1.0f64) {
            let g = skew_path(t, 0.5, 50).digits;
            let d: Vec<u8> = crate::theory::prefix::Expansion::new(t, 2).take(50).collect();
            prop_assert_eq!(g, d);
        }

        #[test]
        fn half_r_equals_lcp(s in 0.0..=1.0f64, t in 0.0..=1.0f64) {
            prop_assert_eq!(r_index(s, t, 0.5, PREFIX_CAP), lcp(s, t, 2, PREFIX_CAP));
        }

        #[test]
        fn half_cov_equals_uniform(s in 0.0..=1.0f64, t in 0.0..=1.0f64) {
            prop_assert!((cov_asyb(s, t, 0.5, 1e-12) - cov_uniform(s, t, 2)).abs() < 1e-9);
        }

        #[test]
        fn cov_asyb_symmetric(s in 0.0..=1.0f64, t in 0.0..=1.0f64, p in 0.05..0.95f64) {
            let a = cov_asyb(s, t, p, 1e-12);
            let b = cov_asyb(t, s, p, 1e-12);
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
