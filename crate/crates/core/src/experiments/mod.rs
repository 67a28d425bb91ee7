//! Monte Carlo harness comparing simulated complexities with the theory.
//!
//! Replicate `r` of a run draws its data from the substream keyed by
//! `(seed, r)`, and results are aggregated in replicate order, so a summary
//! depends only on the [`RunConfig`] and not on the number of worker threads.

mod report;
mod stats;

use std::sync::Arc;

use rand::Rng;
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use report::{csv_line, fmt_sig, CheckRow, EstimatorSummary, CSV_HEADER};
pub(crate) use stats::variance_stderr;
pub use stats::{
    ks_standard_normal, quantile_sorted, quantile_stderr, summarize, wasserstein1, Summary,
};

use crate::error::{Error, Result};
use crate::limit_sim::{tree_truncation_bound, AsymBernoulliSampler};
use crate::markov_source::{DataSet, MarkovModel, ModelFamily, DEFAULT_DEPTH_CAP};
use crate::radix_select::{check_grid, normalize_profile, profile, select, worst_case, Centering};
use crate::seeding::{stream_rng, substream_key, Domain};
use crate::theory::{
    cov_asyb, cov_uniform, kappa_mu, lcp, r_index, MarkovMean, PrefixLen, PREFIX_CAP,
};
use stats::ColumnStats;

/// Run size tag; `Fast` runs use reduced sizes and wider tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Budget {
    Fast,
    Full,
}

/// Tolerances of the individual checks.
///
/// The limit theorems give no convergence rates, so each value is a Monte
/// Carlo noise allowance plus a finite-`n` bias allowance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub uniform_mean: f64,
    pub uniform_cov: f64,
    pub asyb_mean: f64,
    pub asyb_cov: f64,
    /// Covariances are compared only where the common prefix (`j` or `r`) is
    /// at most this long; `None` compares every pair including the diagonal.
    pub cov_max_prefix: Option<usize>,
    pub markov_mean: f64,
    pub grand_mean: f64,
    /// Relative tolerance on `Var(W_n) / n^2`.
    pub grand_var_rel: f64,
    pub clt_mean: f64,
    /// Half-width of the accepted band around variance 1.
    pub clt_var: f64,
    pub clt_ks: f64,
    pub worst_case_median: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            uniform_mean: 0.15,
            uniform_cov: 0.3,
            asyb_mean: 0.02,
            asyb_cov: 0.3,
            cov_max_prefix: Some(4),
            markov_mean: 0.05,
            grand_mean: 0.05,
            grand_var_rel: 0.25,
            clt_mean: 0.1,
            clt_var: 0.15,
            clt_ks: 0.05,
            worst_case_median: 0.2,
        }
    }
}

/// Depth up to which grid points are tested against the breakpoints of `m_mu`.
pub const BREAKPOINT_SCAN_DEPTH: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub model: MarkovModel,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub grid: Vec<f64>,
    pub tolerances: Tolerances,
    pub budget: Budget,
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Tolerance for evaluating `m_mu`.
    pub mean_tol: f64,
    /// Draws of the limit sampler in the worst-case comparison.
    pub limit_draws: usize,
    /// Tree depth `K` of the uniform limit sampler.
    pub tree_depth: usize,
    /// The asymmetric Bernoulli limit is sampled on `{k 2^-d}`.
    pub asyb_grid_depth: usize,
    pub jitter: f64,
    /// Midpoints used for the quadrature of `m_mu`.
    pub quadrature_points: usize,
    /// Longest digit prefix realized per datum.
    pub depth_cap: usize,
}

impl RunConfig {
    pub fn new(model: MarkovModel, n: usize, reps: usize, seed: u64) -> Result<Self> {
        let mean_tol = 1e-9;
        let grid = default_grid(&model, mean_tol)?;
        let cfg = Self {
            model,
            n,
            reps,
            seed,
            grid,
            tolerances: Tolerances::default(),
            budget: Budget::Full,
            threads: None,
            mean_tol,
            limit_draws: 10_000,
            tree_depth: 10,
            asyb_grid_depth: 8,
            jitter: 1e-10,
            quadrature_points: 10_000,
            depth_cap: DEFAULT_DEPTH_CAP,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidParameter("reps must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        check_grid(&self.grid)?;
        if self.grid.is_empty() {
            return Err(Error::InvalidParameter("grid is empty".into()));
        }
        Ok(())
    }

    fn summary(
        &self,
        experiment: &str,
        notes: Vec<String>,
        rows: Vec<CheckRow>,
    ) -> EstimatorSummary {
        EstimatorSummary {
            experiment: experiment.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            model: self.model.clone(),
            n: self.n,
            reps: self.reps,
            seed: self.seed,
            budget: self.budget,
            grid: self.grid.clone(),
            tolerances: self.tolerances.clone(),
            notes,
            rows,
        }
    }

    fn data(&self, model: &Arc<MarkovModel>, rep: usize) -> DataSet {
        DataSet::new(
            Arc::clone(model),
            self.n,
            substream_key(self.seed, Domain::Replicate, rep as u64),
        )
        .with_depth_cap(self.depth_cap)
    }
}

/// `{k / b^3}` together with `{0.1, ..., 0.9}`; for general Markov sources
/// breakpoints of `m_mu` are removed.
pub fn default_grid(model: &MarkovModel, mean_tol: f64) -> Result<Vec<f64>> {
    grid_of_depth(model, 3, mean_tol)
}

/// As [`default_grid`] with `{k / b^depth}` in place of `{k / b^3}`.
pub fn grid_of_depth(model: &MarkovModel, depth: u32, mean_tol: f64) -> Result<Vec<f64>> {
    let cells = model
        .b()
        .checked_pow(depth)
        .filter(|&c| c <= 1 << 20)
        .ok_or_else(|| Error::InvalidParameter(format!("grid depth {depth} is too fine")))?;
    let mut grid: Vec<f64> = (0..=cells)
        .map(|k| k as f64 / cells as f64)
        .chain((1..10).map(|k| k as f64 / 10.0))
        .collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    if model.family() == ModelFamily::General && model.b() == 2 {
        let mean = MarkovMean::new(model, mean_tol)?;
        grid.retain(|&t| !mean.is_breakpoint(t, BREAKPOINT_SCAN_DEPTH));
    }
    Ok(grid)
}

/// Marks grid points lying on the interval decomposition of the model (the
/// `b`-adic rationals for uniform data), where the limit process has jumps.
pub fn breakpoint_flags(model: &MarkovModel, grid: &[f64], mean_tol: f64) -> Result<Vec<bool>> {
    if model.b() == 2 {
        let mean = MarkovMean::new(model, mean_tol)?;
        return Ok(grid
            .iter()
            .map(|&t| mean.is_breakpoint(t, BREAKPOINT_SCAN_DEPTH))
            .collect());
    }
    if model.family() == ModelFamily::Uniform {
        let b = model.b() as f64;
        return Ok(grid
            .iter()
            .map(|&t| {
                t > 0.0
                    && t < 1.0
                    && (1..=20).any(|k| {
                        let x = t * b.powi(k);
                        (x - x.round()).abs() <= 1e-9
                    })
            })
            .collect());
    }
    Ok(vec![false; grid.len()])
}

/// Runs `f` for every replicate, in parallel, returning results in replicate
/// order.
fn per_replicate<T, F>(cfg: &RunConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    parallel_map(cfg.reps, cfg.threads, f)
}

/// `count` independent limit-sampler draws; draw `k` uses sampler substream
/// `k` of `seed`, so the output does not depend on `threads`.
pub fn sampler_draws<T, F>(seed: u64, count: usize, threads: Option<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut Xoshiro256PlusPlus) -> Result<T> + Sync + Send,
{
    parallel_map(count, threads, |k| {
        f(&mut stream_rng(seed, Domain::Sampler, k as u64))
    })
}

fn parallel_map<T, F>(count: usize, threads: Option<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let run = || {
        (0..count)
            .into_par_iter()
            .map(&f)
            .collect::<Result<Vec<T>>>()
    };
    match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

/// Quantile process experiment: per replicate the complexity profile,
/// normalized to `X_n` on the grid, then grid-wise means and pairwise
/// covariances against the limit theory.
pub fn quantile_experiment(cfg: &RunConfig) -> Result<EstimatorSummary> {
    cfg.validate()?;
    let model = Arc::new(cfg.model.clone());
    let centering = Centering::for_model(&model, cfg.mean_tol)?;
    let tol = &cfg.tolerances;
    let n = cfg.n as f64;
    let grid = &cfg.grid;
    let mut notes = Vec::new();

    // Per replicate: X_n on the grid followed by Y_n / n on the grid.
    let samples: Vec<Vec<f64>> = per_replicate(cfg, |rep| {
        let mut data = cfg.data(&model, rep);
        let prof = profile(&mut data)?;
        let x = normalize_profile(&prof, grid, &centering)?;
        let mut row = x.values().to_vec();
        row.extend(
            grid.iter()
                .zip(x.values())
                .map(|(&t, &v)| v / n.sqrt() + centering.at(t)),
        );
        Ok(row)
    })?;
    let stats = ColumnStats::new(&samples);
    let g = grid.len();
    let mut rows = Vec::new();

    let breakpoints = breakpoint_flags(&cfg.model, grid, cfg.mean_tol)?;
    if breakpoints.iter().any(|&b| b) {
        notes.push(
            "`@breakpoint` rows sit on a point of the interval decomposition, where the limit \
             process jumps; the mean there is the average of both one-sided limits"
                .into(),
        );
    }
    let tag = |id: &str, flagged: bool| {
        if flagged {
            format!("{id}@breakpoint")
        } else {
            id.to_string()
        }
    };

    for (k, &t) in grid.iter().enumerate() {
        let mean_x = stats.mean(k);
        let se_x = (stats.cov(&samples, k, k) / cfg.reps as f64).sqrt();
        let mean_y = stats.mean(g + k);
        let se_y = (stats.cov(&samples, g + k, g + k) / cfg.reps as f64).sqrt();
        let c = centering.at(t);
        let (id_x, id_y) = (tag("mean_x", breakpoints[k]), tag("mean_y", breakpoints[k]));
        match &centering {
            Centering::Uniform { .. } => {
                rows.push(CheckRow::check(
                    id_x,
                    None,
                    Some(t),
                    mean_x,
                    0.0,
                    se_x,
                    tol.uniform_mean,
                ));
                rows.push(CheckRow::report(id_y, None, Some(t), mean_y, Some(c), se_y));
            }
            Centering::AsymBernoulli { .. } => {
                rows.push(CheckRow::report(
                    id_x,
                    None,
                    Some(t),
                    mean_x,
                    Some(0.0),
                    se_x,
                ));
                rows.push(CheckRow::check(
                    id_y,
                    None,
                    Some(t),
                    mean_y,
                    c,
                    se_y,
                    tol.asyb_mean,
                ));
            }
            Centering::Markov(_) => {
                rows.push(CheckRow::report(id_x, None, Some(t), mean_x, None, se_x));
                rows.push(CheckRow::check(
                    id_y,
                    None,
                    Some(t),
                    mean_y,
                    c,
                    se_y,
                    tol.markov_mean,
                ));
            }
        }
    }

    for i in 0..g {
        for j in i..g {
            let (s, t) = (grid[i], grid[j]);
            let (c, se) = stats.cov_stderr(&samples, i, j);
            let id = tag("cov_x", breakpoints[i] || breakpoints[j]);
            let row = match &centering {
                Centering::Uniform { b } => {
                    let theory = cov_uniform(s, t, *b);
                    let prefix = lcp(s, t, *b, PREFIX_CAP);
                    compare_cov(id, prefix, tol, s, t, c, theory, se, tol.uniform_cov)
                }
                Centering::AsymBernoulli { p } => {
                    let theory = cov_asyb(s, t, *p, 1e-12);
                    let prefix = r_index(s, t, *p, PREFIX_CAP);
                    compare_cov(id, prefix, tol, s, t, c, theory, se, tol.asyb_cov)
                }
                Centering::Markov(_) => CheckRow::report(id, Some(s), Some(t), c, None, se),
            };
            rows.push(row);
        }
    }
    if let Centering::Markov(mean) = &centering {
        notes.push(format!(
            "m_mu truncated at depth {} (tail bound {:e}); no covariance theory for general sources",
            mean.depth(),
            mean.tail_bound()
        ));
    }
    if let Some(k) = tol.cov_max_prefix {
        notes.push(format!(
            "covariances checked where the common prefix is at most {k}"
        ));
    }
    Ok(cfg.summary("quantile", notes, rows))
}

#[allow(clippy::too_many_arguments)]
fn compare_cov(
    id: String,
    prefix: PrefixLen,
    tol: &Tolerances,
    s: f64,
    t: f64,
    c: f64,
    theory: f64,
    se: f64,
    eps: f64,
) -> CheckRow {
    let checked = match tol.cov_max_prefix {
        None => true,
        Some(k) => prefix.at_most(k),
    };
    if checked {
        CheckRow::check(id, Some(s), Some(t), c, theory, se, eps)
    } else {
        CheckRow::report(id, Some(s), Some(t), c, Some(theory), se)
    }
}

/// Mean and variance of `m_mu(U)` by the midpoint rule; breakpoints use the
/// averaged one-sided limits.
pub fn quadrature_moments(mean: &MarkovMean, points: usize, center: f64) -> (f64, f64) {
    let h = 1.0 / points as f64;
    let values: Vec<f64> = (0..points)
        .map(|k| mean.eval((k as f64 + 0.5) * h))
        .collect();
    let integral = values.iter().sum::<f64>() * h;
    let var = values.iter().map(|m| (m - center).powi(2)).sum::<f64>() * h;
    (integral, var)
}

/// Grand averages: per replicate one uniformly random rank is selected and
/// its cost `W_n` recorded.
pub fn grand_average_experiment(cfg: &RunConfig) -> Result<EstimatorSummary> {
    cfg.validate()?;
    if cfg.model.b() != 2 {
        return Err(Error::NotBinary(cfg.model.b()));
    }
    let model = Arc::new(cfg.model.clone());
    let tol = &cfg.tolerances;
    let n = cfg.n as f64;
    let w: Vec<f64> = per_replicate(cfg, |rep| {
        let mut data = cfg.data(&model, rep);
        let mut rng = stream_rng(cfg.seed, Domain::Rank, rep as u64);
        let rank = rng.random_range(1..=cfg.n);
        Ok(select(&mut data, rank)?.ops as f64)
    })?;

    let kappa = kappa_mu(&cfg.model)?;
    let mean = MarkovMean::new(&cfg.model, cfg.mean_tol)?;
    let (integral, var_theory) = quadrature_moments(&mean, cfg.quadrature_points, kappa.kappa_mu);
    let scaled: Vec<f64> = w.iter().map(|x| x / n).collect();
    let s = summarize(&scaled)?;
    let mut rows = vec![
        CheckRow::check(
            "mean_w_over_n",
            None,
            None,
            s.mean,
            kappa.kappa_mu,
            s.stderr,
            tol.grand_mean,
        ),
        CheckRow::report(
            "kappa_quadrature",
            None,
            None,
            integral,
            Some(kappa.kappa_mu),
            0.0,
        ),
    ];
    let var_se = variance_stderr(&scaled, s.mean, s.variance);
    let mut notes = vec![format!(
        "kappa0 = {}, kappa1 = {}, quadrature with {} midpoints",
        kappa.kappa0, kappa.kappa1, cfg.quadrature_points
    )];
    if cfg.model.family() == ModelFamily::Uniform {
        rows.push(CheckRow::report(
            "var_w_over_n2",
            None,
            None,
            s.variance,
            Some(var_theory),
            var_se,
        ));
        let z: Vec<f64> = w.iter().map(|x| (x - 2.0 * n) / (2.0 * n).sqrt()).collect();
        let zs = summarize(&z)?;
        let ks = ks_standard_normal(&z)?;
        rows.push(CheckRow::check(
            "clt_mean",
            None,
            None,
            zs.mean,
            0.0,
            zs.stderr,
            tol.clt_mean,
        ));
        rows.push(CheckRow::check(
            "clt_var",
            None,
            None,
            zs.variance,
            1.0,
            variance_stderr(&z, zs.mean, zs.variance),
            tol.clt_var,
        ));
        rows.push(CheckRow::check(
            "clt_ks",
            None,
            None,
            ks,
            0.0,
            1.0 / (cfg.reps as f64).sqrt(),
            tol.clt_ks,
        ));
        notes.push("uniform model: (W_n - 2n) / sqrt(2n) compared with N(0, 1)".into());
    } else {
        rows.push(CheckRow::check(
            "var_w_over_n2",
            None,
            None,
            s.variance,
            var_theory,
            var_se,
            tol.grand_var_rel * var_theory,
        ));
    }
    Ok(cfg.summary("grand-average", notes, rows))
}

/// Worst case over ranks against the supremum of the matching limit process.
pub fn worst_case_experiment(cfg: &RunConfig) -> Result<EstimatorSummary> {
    cfg.validate()?;
    let model = Arc::new(cfg.model.clone());
    let centering = Centering::for_model(&model, cfg.mean_tol)?;
    let mut notes = Vec::new();
    let sampler_sups: Vec<f64> =
        match &centering {
            &Centering::Uniform { b } => {
                notes.push(format!(
                "limit: sup of G on the b-adic grid of depth {} (covariance truncation bound {:e})",
                cfg.tree_depth,
                tree_truncation_bound(b, cfg.tree_depth)
            ));
                per_draw(cfg, |rng| {
                    Ok(crate::limit_sim::sample_g_uniform(b, cfg.tree_depth, rng)?.sup())
                })?
            }
            &Centering::AsymBernoulli { p } => {
                let cells = 1usize << cfg.asyb_grid_depth;
                let grid: Vec<f64> = (0..=cells).map(|k| k as f64 / cells as f64).collect();
                let sampler = AsymBernoulliSampler::new(p, &grid, cfg.jitter)?;
                notes.push(format!(
                    "limit: sup of G^asyB on {{k 2^-{}}} (jitter {:e})",
                    cfg.asyb_grid_depth, sampler.jitter
                ));
                per_draw(cfg, |rng| Ok(sampler.sample(rng).sup()))?
            }
            Centering::Markov(_) => return Err(Error::InvalidParameter(
                "worst-case limit is known only for the uniform and asymmetric Bernoulli models"
                    .into(),
            )),
        };
    let worst: Vec<f64> = per_replicate(cfg, |rep| {
        let mut data = cfg.data(&model, rep);
        worst_case(&profile(&mut data)?, &centering)
    })?;

    let mut a = worst.clone();
    let mut b = sampler_sups;
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let mut rows = Vec::new();
    for q in [0.25, 0.5, 0.75] {
        let emp = quantile_sorted(&a, q);
        let theory = quantile_sorted(&b, q);
        let se = quantile_stderr(&a, q).hypot(quantile_stderr(&b, q));
        let id = format!("worst_case_q{}", (q * 100.0) as u32);
        rows.push(if q == 0.5 {
            CheckRow::check(
                id,
                None,
                Some(q),
                emp,
                theory,
                se,
                cfg.tolerances.worst_case_median,
            )
        } else {
            CheckRow::report(id, None, Some(q), emp, Some(theory), se)
        });
    }
    let s = summarize(&worst)?;
    rows.push(CheckRow::report(
        "worst_case_mean",
        None,
        None,
        s.mean,
        Some(summarize(&b)?.mean),
        s.stderr,
    ));
    Ok(cfg.summary("worst-case", notes, rows))
}

/// `limit_draws` independent draws, each from its own sampler substream.
fn per_draw<F>(cfg: &RunConfig, f: F) -> Result<Vec<f64>>
where
    F: Fn(&mut Xoshiro256PlusPlus) -> Result<f64> + Sync + Send,
{
    sampler_draws(cfg.seed, cfg.limit_draws, cfg.threads, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(model: MarkovModel, n: usize, reps: usize) -> RunConfig {
        RunConfig::new(model, n, reps, 7).unwrap()
    }

    #[test]
    fn default_grids() {
        let g = default_grid(&MarkovModel::uniform(2).unwrap(), 1e-9).unwrap();
        // 0.5 appears in both parts.
        assert_eq!(g.len(), 17);
        assert!(g.contains(&0.125) && g.contains(&0.1) && g.contains(&1.0));
        let m = MarkovModel::binary(0.5, 0.3, 0.6).unwrap();
        let g = default_grid(&m, 1e-9).unwrap();
        assert!(!g.contains(&0.5));
        assert!(g.contains(&0.1));
    }

    #[test]
    fn config_validation() {
        let m = MarkovModel::uniform(2).unwrap();
        assert!(RunConfig::new(m.clone(), 10, 0, 1).is_err());
        assert!(RunConfig::new(m.clone(), 0, 10, 1).is_err());
        let mut c = RunConfig::new(m, 10, 10, 1).unwrap();
        c.grid = vec![0.5, 0.25];
        assert!(quantile_experiment(&c).is_err());
    }

    #[test]
    fn quantile_rows_cover_the_grid() {
        let cfg = small(MarkovModel::uniform(2).unwrap(), 256, 20);
        let s = quantile_experiment(&cfg).unwrap();
        let g = cfg.grid.len();
        assert_eq!(s.rows_with_id("mean_x").count(), g);
        // Interior eighths are dyadic breakpoints.
        assert_eq!(s.rows_with_id("mean_x@breakpoint").count(), 7);
        assert_eq!(s.rows_with_id("cov_x").count(), g * (g + 1) / 2);
        assert!(s
            .rows
            .iter()
            .all(|r| r.pass.is_none() || r.tolerance.is_some()));
        assert!(s.to_csv().starts_with(CSV_HEADER));
        let back: EstimatorSummary = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn results_do_not_depend_on_threads() {
        let base = small(MarkovModel::binary(0.5, 0.3, 0.6).unwrap(), 200, 12);
        let one = RunConfig {
            threads: Some(1),
            ..base.clone()
        };
        let three = RunConfig {
            threads: Some(3),
            ..base
        };
        assert_eq!(
            quantile_experiment(&one).unwrap(),
            quantile_experiment(&three).unwrap()
        );
        assert_eq!(
            grand_average_experiment(&one).unwrap(),
            grand_average_experiment(&three).unwrap()
        );
    }

    #[test]
    fn markov_flags_breakpoints() {
        let mut cfg = small(MarkovModel::binary(0.5, 0.3, 0.6).unwrap(), 64, 4);
        cfg.grid = vec![0.25, 0.5];
        let s = quantile_experiment(&cfg).unwrap();
        assert_eq!(s.rows_with_id("mean_y@breakpoint").count(), 1);
        assert!(s.rows_with_id("cov_x").all(|r| r.theory.is_none()));
    }

    #[test]
    fn grand_average_rows() {
        let s =
            grand_average_experiment(&small(MarkovModel::uniform(2).unwrap(), 300, 50)).unwrap();
        assert!(s.rows_with_id("clt_ks").count() == 1);
        let s =
            grand_average_experiment(&small(MarkovModel::binary(0.5, 0.3, 0.6).unwrap(), 300, 50))
                .unwrap();
        let v = s.rows_with_id("var_w_over_n2").next().unwrap();
        assert!(v.tolerance.is_some());
        assert!(grand_average_experiment(&small(MarkovModel::uniform(3).unwrap(), 30, 2)).is_err());
    }

    #[test]
    fn worst_case_single_datum() {
        let mut cfg = small(MarkovModel::uniform(2).unwrap(), 1, 5);
        cfg.limit_draws = 20;
        cfg.tree_depth = 4;
        let s = worst_case_experiment(&cfg).unwrap();
        let med = s.rows_with_id("worst_case_q50").next().unwrap();
        assert_eq!(med.empirical, -2.0);
        let mut cfg = small(MarkovModel::bernoulli(0.7).unwrap(), 16, 5);
        cfg.limit_draws = 20;
        cfg.asyb_grid_depth = 4;
        assert!(worst_case_experiment(&cfg).is_ok());
        assert!(
            worst_case_experiment(&small(MarkovModel::binary(0.5, 0.3, 0.6).unwrap(), 8, 2))
                .is_err()
        );
    }

    #[test]
    fn breakpoint_flags_by_family() {
        let grid = [0.0, 0.1, 0.3, 0.5, 1.0 / 9.0, 1.0];
        let f = breakpoint_flags(&MarkovModel::uniform(2).unwrap(), &grid, 1e-9).unwrap();
        assert_eq!(f, [false, false, false, true, false, false]);
        let f = breakpoint_flags(&MarkovModel::uniform(3).unwrap(), &grid, 1e-9).unwrap();
        assert_eq!(f, [false, false, false, false, true, false]);
        let f = breakpoint_flags(&MarkovModel::bernoulli(0.7).unwrap(), &grid, 1e-9).unwrap();
        assert_eq!(f, [false, false, true, false, false, false]);
    }

    #[test]
    fn quadrature_of_uniform_mean() {
        let mean = MarkovMean::new(&MarkovModel::uniform(2).unwrap(), 1e-9).unwrap();
        let (i, v) = quadrature_moments(&mean, 100, 2.0);
        assert!((i - 2.0).abs() < 1e-8 && v < 1e-15);
    }
}
