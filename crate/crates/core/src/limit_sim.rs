//! Samplers for the limit objects: the Gaussian processes `G` (uniform model)
//! and `G^asyB` (asymmetric Bernoulli model), tail checks for their suprema,
//! and the grand-average limits `Z^0`, `Z^1`, `Z_mu`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::markov_source::MarkovModel;
use crate::radix_select::{check_grid, GridProcess, ProcessKind};
use crate::theory::{cov_asyb, kappas, MarkovMean};

/// Largest number of leaves the tree sampler will allocate.
pub const TREE_BUDGET: usize = 1 << 22;

/// Tolerance for the covariance series when building `G^asyB` grids.
pub const ASYB_COV_TOL: f64 = 1e-12;

/// A draw of the centered normal vector with covariance `Upsilon`
/// (`1/(b-1)` on the diagonal, `-1/(b-1)^2` off it).
#[derive(Debug, Clone, PartialEq)]
pub struct UpsilonVector(pub Vec<f64>);

pub fn sample_upsilon<R: Rng + ?Sized>(b: usize, rng: &mut R) -> UpsilonVector {
    let mut g: Vec<f64> = (0..b).map(|_| rng.sample(StandardNormal)).collect();
    let mean = g.iter().sum::<f64>() / b as f64;
    let scale = (b as f64).sqrt() / (b as f64 - 1.0);
    for x in &mut g {
        *x = scale * (*x - mean);
    }
    UpsilonVector(g)
}

/// Covariance gap between the depth-`K` series and the exact kernel.
pub fn tree_truncation_bound(b: usize, depth: usize) -> f64 {
    let bf = b as f64;
    bf / ((bf - 1.0) * (bf - 1.0)) * bf.powi(-(depth as i32)) * bf / (bf - 1.0)
}

/// One path of `G` on the grid `{k b^{-K} : k = 0..=b^K}`.
///
/// Every node of the complete `b`-ary tree of depth `K` carries an independent
/// [`UpsilonVector`]; `G(t)` sums `b^{-k/2}` times the component selected by
/// digit `k + 1` of `t` from the node at depth `k` on `t`'s path. `t = 1`
/// follows the all-`(b-1)` path.
pub fn sample_g_uniform<R: Rng + ?Sized>(
    b: usize,
    depth: usize,
    rng: &mut R,
) -> Result<GridProcess> {
    let leaves = tree_leaves(b, depth)?;
    let mut values = Vec::with_capacity(leaves + 1);
    fill_tree(b, depth, rng, &mut values);
    values.push(*values.last().unwrap());
    let grid = (0..=leaves).map(|k| k as f64 / leaves as f64).collect();
    GridProcess::new(grid, values, ProcessKind::LimitG)
}

fn tree_leaves(b: usize, depth: usize) -> Result<usize> {
    if b < 2 || depth == 0 {
        return Err(Error::InvalidParameter(format!(
            "tree sampler needs b >= 2 and depth >= 1, got {b} and {depth}"
        )));
    }
    u32::try_from(depth)
        .ok()
        .and_then(|d| b.checked_pow(d))
        .filter(|&l| l <= TREE_BUDGET)
        .ok_or(Error::TreeBudget { b, depth })
}

/// Writes the `b^depth` leaf values of one tree path sum into `out`.
pub(crate) fn fill_tree<R: Rng + ?Sized>(b: usize, depth: usize, rng: &mut R, out: &mut Vec<f64>) {
    out.clear();
    out.push(0.0);
    let mut next = Vec::new();
    for k in 0..depth {
        let scale = (b as f64).powf(-(k as f64) / 2.0);
        next.clear();
        for &acc in out.iter() {
            let ups = sample_upsilon(b, rng);
            next.extend(ups.0.iter().map(|x| acc + scale * x));
        }
        std::mem::swap(out, &mut next);
    }
}

/// Grid sampler for `G^asyB` via a Cholesky factor of its covariance matrix.
#[derive(Debug, Clone)]
pub struct AsymBernoulliSampler {
    grid: Vec<f64>,
    factor: Vec<f64>,
    pub jitter: f64,
}

impl AsymBernoulliSampler {
    /// Factors the grid covariance, raising the diagonal jitter tenfold up to
    /// three times before giving up.
    pub fn new(p: f64, grid: &[f64], jitter: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!("p = {p} outside (0, 1)")));
        }
        check_grid(grid)?;
        if grid.is_empty() {
            return Err(Error::EmptySample);
        }
        let n = grid.len();
        let mut cov = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let c = cov_asyb(grid[i], grid[j], p, ASYB_COV_TOL);
                cov[i * n + j] = c;
                cov[j * n + i] = c;
            }
        }
        let mut jitter = jitter;
        let mut failed_at = 0;
        for _ in 0..4 {
            match cholesky(&cov, n, jitter) {
                Ok(factor) => {
                    return Ok(Self {
                        grid: grid.to_vec(),
                        factor,
                        jitter,
                    })
                }
                Err(k) => failed_at = k,
            }
            jitter *= 10.0;
        }
        let partner = (0..failed_at)
            .max_by(|&a, &b| {
                let corr = |j: usize| {
                    cov[failed_at * n + j].abs()
                        / (cov[j * n + j] * cov[failed_at * n + failed_at]).sqrt()
                };
                corr(a).total_cmp(&corr(b))
            })
            .unwrap_or(failed_at);
        Err(Error::NotPositiveDefinite {
            t: grid[failed_at],
            partner: grid[partner],
            jitter: jitter / 10.0,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GridProcess {
        let n = self.grid.len();
        let z: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let values = (0..n)
            .map(|i| {
                self.factor[i * n..i * n + i + 1]
                    .iter()
                    .zip(&z)
                    .map(|(l, z)| l * z)
                    .sum()
            })
            .collect();
        GridProcess::new(self.grid.clone(), values, ProcessKind::LimitGAsyB)
            .expect("grid validated at construction")
    }
}

/// Lower-triangular factor of `a + jitter I` (row-major); on failure the index
/// of the first non-positive pivot.
fn cholesky(a: &[f64], n: usize, jitter: f64) -> std::result::Result<Vec<f64>, usize> {
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let row_j = &l[j * n..j * n + j];
        let d = a[j * n + j] + jitter - row_j.iter().map(|x| x * x).sum::<f64>();
        if d.is_nan() || d <= 0.0 {
            return Err(j);
        }
        let djj = d.sqrt();
        l[j * n + j] = djj;
        for i in j + 1..n {
            let dot: f64 = (0..j).map(|k| l[i * n + k] * l[j * n + k]).sum();
            l[i * n + j] = (a[i * n + j] - dot) / djj;
        }
    }
    Ok(l)
}

/// One draw of `G^asyB` on `grid`.
pub fn sample_g_asyb<R: Rng + ?Sized>(
    p: f64,
    grid: &[f64],
    rng: &mut R,
    jitter: f64,
) -> Result<GridProcess> {
    Ok(AsymBernoulliSampler::new(p, grid, jitter)?.sample(rng))
}

/// Sub-Gaussian concentration bound `P(|S - E S| >= t) <= 2 exp(-c t^2)` for
/// the supremum of a limit process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailBound {
    Uniform { b: usize },
    AsymBernoulli { p: f64 },
}

impl TailBound {
    pub fn rate(&self) -> f64 {
        match *self {
            Self::Uniform { b } => {
                let b = b as f64;
                (b - 1.0) * (b - 1.0) / (2.0 * b)
            }
            Self::AsymBernoulli { p } => {
                let pv = p.max(1.0 - p);
                (1.0 - pv) * (1.0 - pv) / (2.0 * pv)
            }
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        2.0 * (-self.rate() * t * t).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailRow {
    pub threshold: f64,
    pub frequency: f64,
    pub bound: f64,
    /// Binomial standard error at success probability `min(bound, 1)`.
    pub stderr: f64,
    /// False only if the bound is informative (`< 1`) and exceeded by more
    /// than three standard errors.
    pub pass: bool,
}

/// Empirical `P(|S - center| >= t)` next to the tail bound, per threshold.
pub fn sup_tail_check(
    sups: &[f64],
    center: f64,
    thresholds: &[f64],
    bound: TailBound,
) -> Result<Vec<TailRow>> {
    if sups.len() < 1000 {
        return Err(Error::InvalidParameter(format!(
            "tail check needs at least 1000 samples, got {}",
            sups.len()
        )));
    }
    let n = sups.len() as f64;
    Ok(thresholds
        .iter()
        .map(|&t| {
            let hits = sups.iter().filter(|&&s| (s - center).abs() >= t).count();
            let frequency = hits as f64 / n;
            let bound = bound.value(t);
            let q = bound.min(1.0);
            let stderr = (q * (1.0 - q) / n).sqrt();
            TailRow {
                threshold: t,
                frequency,
                bound,
                stderr,
                pass: bound >= 1.0 || frequency <= bound + 3.0 * stderr,
            }
        })
        .collect())
}

/// Joint draw from the grand-average limit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZSample {
    pub z0: f64,
    pub z1: f64,
    pub z_mu: Option<f64>,
    pub iterations: usize,
}

/// Default number of random-map iterations.
pub const Z_ITERATIONS: usize = 64;

struct ZSystem {
    p: [[f64; 2]; 2],
    kappa: [f64; 2],
    mu0: f64,
    upper: f64,
}

impl ZSystem {
    fn new(model: &MarkovModel) -> Result<Self> {
        let (k0, k1) = kappas(model)?;
        Ok(Self {
            p: [
                [model.p(0, 0), model.p(0, 1)],
                [model.p(1, 0), model.p(1, 1)],
            ],
            kappa: [k0, k1],
            mu0: model.mu()[0],
            upper: 1.0 / (1.0 - model.p_max()) + 1.0,
        })
    }

    /// Unfolds `Z^i = B p_{i0} Z^0 + (1 - B) p_{i1} Z^1 + 1` along the one
    /// branch the Bernoulli switch picks at each level; depth 0 is `kappa_i`.
    fn draw<R: Rng + ?Sized>(&self, start: usize, iterations: usize, rng: &mut R) -> f64 {
        let mut state = start;
        let mut weight = 1.0;
        let mut sum = 0.0;
        for _ in 0..iterations {
            sum += weight;
            let p0 = self.p[state][0];
            if rng.random::<f64>() < p0 {
                weight *= p0;
                state = 0;
            } else {
                weight *= self.p[state][1];
                state = 1;
            }
        }
        let z = sum + weight * self.kappa[state];
        debug_assert!((1.0..=self.upper).contains(&z), "Z = {z} out of range");
        z
    }
}

/// Draws `(Z^0, Z^1)` independently after `iterations` random-map steps.
pub fn sample_z_pair<R: Rng + ?Sized>(
    model: &MarkovModel,
    iterations: usize,
    rng: &mut R,
) -> Result<ZSample> {
    let sys = ZSystem::new(model)?;
    Ok(ZSample {
        z0: sys.draw(0, iterations, rng),
        z1: sys.draw(1, iterations, rng),
        z_mu: None,
        iterations,
    })
}

/// As [`sample_z_pair`], plus `Z_mu = B mu0 Z^0 + (1 - B)(1 - mu0) Z^1 + 1`.
pub fn sample_z_mu<R: Rng + ?Sized>(
    model: &MarkovModel,
    iterations: usize,
    rng: &mut R,
) -> Result<ZSample> {
    let sys = ZSystem::new(model)?;
    let z0 = sys.draw(0, iterations, rng);
    let z1 = sys.draw(1, iterations, rng);
    let z_mu = if rng.random::<f64>() < sys.mu0 {
        sys.mu0 * z0
    } else {
        (1.0 - sys.mu0) * z1
    } + 1.0;
    Ok(ZSample {
        z0,
        z1,
        z_mu: Some(z_mu),
        iterations,
    })
}

/// Draws `Z_mu` as `m_mu(U)` with `U` uniform on `[0, 1]`.
pub fn sample_z_mu_quantile<R: Rng + ?Sized>(
    model: &MarkovModel,
    rng: &mut R,
    tol: f64,
) -> Result<f64> {
    Ok(MarkovMean::new(model, tol)?.eval(rng.random::<f64>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::summarize;
    use crate::theory::{cov_uniform, kappa_mu};
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn rng(seed: u64) -> Xoshiro256PlusPlus {
        Xoshiro256PlusPlus::seed_from_u64(seed)
    }

    /// Sample covariance of columns `i`, `j` with its normal-theory standard error.
    fn cov_with_se(rows: &[Vec<f64>], i: usize, j: usize) -> (f64, f64) {
        let n = rows.len() as f64;
        let mi = rows.iter().map(|r| r[i]).sum::<f64>() / n;
        let mj = rows.iter().map(|r| r[j]).sum::<f64>() / n;
        let vi = rows.iter().map(|r| (r[i] - mi).powi(2)).sum::<f64>() / n;
        let vj = rows.iter().map(|r| (r[j] - mj).powi(2)).sum::<f64>() / n;
        let c = rows.iter().map(|r| (r[i] - mi) * (r[j] - mj)).sum::<f64>() / (n - 1.0);
        (c, ((vi * vj + c * c) / n).sqrt())
    }

    #[test]
    fn binary_upsilon_is_antisymmetric() {
        let mut r = rng(1);
        for _ in 0..100 {
            let u = sample_upsilon(2, &mut r);
            assert!((u.0[0] + u.0[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn upsilon_covariance() {
        let mut r = rng(2);
        let b = 3;
        let rows: Vec<Vec<f64>> = (0..100_000).map(|_| sample_upsilon(b, &mut r).0).collect();
        for i in 0..b {
            let m = summarize(&rows.iter().map(|x| x[i]).collect::<Vec<_>>()).unwrap();
            assert!(m.mean.abs() <= 3.0 * m.stderr);
            for j in 0..b {
                let target = if i == j { 0.5 } else { -0.25 };
                let (c, se) = cov_with_se(&rows, i, j);
                assert!((c - target).abs() <= 3.0 * se, "({i},{j}) {c} vs {target}");
            }
        }
    }

    #[test]
    fn series_covariance_telescopes() {
        // sum_{k<j} b^{-k}/(b-1) - b^{-j}/(b-1)^2 equals the closed-form kernel.
        for b in 2..6usize {
            let bf = b as f64;
            for j in 0..12 {
                let series: f64 = (0..j).map(|k| bf.powi(-k) / (bf - 1.0)).sum::<f64>()
                    - bf.powi(-j) / ((bf - 1.0) * (bf - 1.0));
                let closed =
                    bf / (bf - 1.0).powi(2) - (bf + 1.0) / (bf - 1.0).powi(2) * bf.powi(-j);
                assert!((series - closed).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn depth_one_tree_is_two_valued() {
        let g = sample_g_uniform(2, 1, &mut rng(3)).unwrap();
        assert_eq!(g.grid(), &[0.0, 0.5, 1.0]);
        let v = g.values();
        assert!((v[0] + v[1]).abs() < 1e-15);
        assert_eq!(v[1], v[2]);
    }

    #[test]
    fn tree_budget() {
        assert!(matches!(
            sample_g_uniform(2, 30, &mut rng(0)),
            Err(Error::TreeBudget { .. })
        ));
        assert!(sample_g_uniform(2, 0, &mut rng(0)).is_err());
    }

    #[test]
    fn tree_sampler_matches_kernel() {
        let mut r = rng(4);
        let depth = 6;
        let picks = [0usize, 8, 16, 24, 32, 40, 48, 56, 64];
        let rows: Vec<Vec<f64>> = (0..20_000)
            .map(|_| {
                let g = sample_g_uniform(2, depth, &mut r).unwrap();
                picks.iter().map(|&k| g.values()[k]).collect()
            })
            .collect();
        let bias = tree_truncation_bound(2, depth);
        for i in 0..picks.len() {
            for j in 0..=i {
                let (s, t) = (picks[i] as f64 / 64.0, picks[j] as f64 / 64.0);
                let (c, se) = cov_with_se(&rows, i, j);
                let target = cov_uniform(s, t, 2);
                assert!(
                    (c - target).abs() <= 3.5 * se + bias,
                    "({s},{t}) {c} vs {target}"
                );
            }
        }
    }

    #[test]
    fn asyb_single_point_variance() {
        let mut r = rng(5);
        let sampler = AsymBernoulliSampler::new(0.7, &[0.0], 1e-10).unwrap();
        let xs: Vec<f64> = (0..20_000)
            .map(|_| sampler.sample(&mut r).values()[0])
            .collect();
        let s = summarize(&xs).unwrap();
        let target = 0.3 / 0.49;
        // Standard error of a normal sample variance: sigma^2 sqrt(2 / (n - 1)).
        assert!((s.variance - target).abs() <= 3.0 * target * (2.0 / 19_999.0f64).sqrt());
    }

    #[test]
    fn asyb_half_matches_uniform_kernel() {
        let grid: Vec<f64> = (0..=8).map(|k| k as f64 / 8.0).collect();
        let sampler = AsymBernoulliSampler::new(0.5, &grid, 1e-10).unwrap();
        let mut r = rng(6);
        let rows: Vec<Vec<f64>> = (0..20_000)
            .map(|_| sampler.sample(&mut r).values().to_vec())
            .collect();
        for i in 0..grid.len() {
            for j in 0..=i {
                let (c, se) = cov_with_se(&rows, i, j);
                let target = cov_uniform(grid[i], grid[j], 2);
                assert!((c - target).abs() <= 3.5 * se, "({i},{j}) {c} vs {target}");
            }
        }
    }

    #[test]
    fn asyb_rejects_bad_input() {
        assert!(AsymBernoulliSampler::new(1.0, &[0.5], 1e-10).is_err());
        assert!(AsymBernoulliSampler::new(0.7, &[0.5, 0.2], 1e-10).is_err());
        assert!(AsymBernoulliSampler::new(0.7, &[], 1e-10).is_err());
    }

    #[test]
    fn cholesky_reports_failing_pivot() {
        let a = [1.0, 2.0, 2.0, 1.0];
        assert_eq!(cholesky(&a, 2, 0.0), Err(1));
        let l = cholesky(&[4.0, 2.0, 2.0, 3.0], 2, 0.0).unwrap();
        assert_eq!(l, vec![2.0, 0.0, 1.0, 2f64.sqrt()]);
    }

    #[test]
    fn tail_bound_values() {
        let u = TailBound::Uniform { b: 2 };
        assert!((u.value(2.0) - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(u.value(0.0), 2.0);
        let a = TailBound::AsymBernoulli { p: 0.7 };
        assert!((a.value(3.0) - 1.1214).abs() < 1e-4);
        let rows = sup_tail_check(&vec![0.0; 1000], 0.0, &[0.0, 3.0], a).unwrap();
        assert_eq!(rows[0].frequency, 1.0);
        assert!(rows.iter().all(|r| r.pass));
        assert!(sup_tail_check(&[0.0; 10], 0.0, &[1.0], u).is_err());
    }

    #[test]
    fn uniform_z_is_deterministic() {
        let m = MarkovModel::uniform(2).unwrap();
        let mut r = rng(7);
        for _ in 0..100 {
            let z = sample_z_mu(&m, 64, &mut r).unwrap();
            assert_eq!((z.z0, z.z1, z.z_mu), (2.0, 2.0, Some(2.0)));
            // m_mu is a truncated series, exact to within its tolerance.
            let q = sample_z_mu_quantile(&m, &mut r, 1e-9).unwrap();
            assert!((q - 2.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn z_draws_respect_bounds_and_mean() {
        let m = MarkovModel::binary(0.5, 0.3, 0.6).unwrap();
        let k = kappa_mu(&m).unwrap();
        let mut r = rng(8);
        let draws: Vec<ZSample> = (0..100_000)
            .map(|_| sample_z_pair(&m, 64, &mut r).unwrap())
            .collect();
        let hi = 1.0 / (1.0 - m.p_max()) + 1.0;
        assert!(draws
            .iter()
            .all(|z| (1.0..=hi).contains(&z.z0) && (1.0..=hi).contains(&z.z1)));
        let s0 = summarize(&draws.iter().map(|z| z.z0).collect::<Vec<_>>()).unwrap();
        let s1 = summarize(&draws.iter().map(|z| z.z1).collect::<Vec<_>>()).unwrap();
        assert!((s0.mean - k.kappa0).abs() <= 3.0 * s0.stderr);
        assert!((s1.mean - k.kappa1).abs() <= 3.0 * s1.stderr);
    }

    #[test]
    fn quantile_representation_mean() {
        let m = MarkovModel::binary(0.5, 0.3, 0.6).unwrap();
        let k = kappa_mu(&m).unwrap();
        let mean = MarkovMean::new(&m, 1e-9).unwrap();
        let mut r = rng(9);
        let xs: Vec<f64> = (0..100_000).map(|_| mean.eval(r.random())).collect();
        let s = summarize(&xs).unwrap();
        assert!((s.mean - k.kappa_mu).abs() <= 3.0 * s.stderr);
    }
}
