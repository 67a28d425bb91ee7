//! Instrumented Radix Selection.
//!
//! The unit of cost is the bucket operation: placing one datum into one of
//! the `b` sub-buckets of its current bucket. A bucket holding at most one
//! datum is never distributed, so `Y_0 = Y_1 = 0`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::markov_source::{DataSet, MarkovModel, ModelFamily};
use crate::theory::{mean_asyb, MarkovMean};

/// Outcome of selecting one rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionResult {
    pub rank: usize,
    /// Bucket operations spent.
    pub ops: u64,
    /// Number of distribution rounds.
    pub depth: usize,
    /// Digits of the bucket path, one per round.
    pub selected_prefix: Vec<u8>,
}

/// Bucket-operation counts `Y_n(l)` for every rank `l = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    pub n: usize,
    pub b: usize,
    y: Vec<u64>,
    /// Depth of the deepest distributed bucket (0 when nothing was distributed).
    pub max_depth: usize,
}

impl ComplexityProfile {
    /// `Y_n(rank)` for a 1-based rank; rank `n + 1` maps to rank `n`.
    pub fn y(&self, rank: usize) -> u64 {
        self.y[rank.min(self.n) - 1]
    }

    pub fn values(&self) -> &[u64] {
        &self.y
    }

    pub fn from_values(b: usize, y: Vec<u64>) -> Self {
        Self {
            n: y.len(),
            b,
            y,
            max_depth: 0,
        }
    }
}

/// Which object a [`GridProcess`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcessKind {
    EmpiricalXn,
    LimitG,
    LimitGAsyB,
}

/// A real-valued process observed on a strictly increasing grid in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridProcess {
    grid: Vec<f64>,
    values: Vec<f64>,
    pub kind: ProcessKind,
}

impl GridProcess {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, kind: ProcessKind) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Dimension {
                what: "process values",
                expected: grid.len(),
                got: values.len(),
            });
        }
        check_grid(&grid)?;
        Ok(Self { grid, values, kind })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sup(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|t| !(0.0..=1.0).contains(t)) {
        return Err(Error::InvalidParameter(
            "grid points must lie in [0, 1]".into(),
        ));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// First-order centering `c(t)` of the complexity, `E[Y_n(tn)] ~ c(t) n`.
#[derive(Debug, Clone)]
pub enum Centering {
    /// Constant `b / (b - 1)`.
    Uniform { b: usize },
    /// The affine mean function of the asymmetric Bernoulli model.
    AsymBernoulli { p: f64 },
    /// `m_mu` of a general binary Markov source; diagnostic only.
    Markov(Arc<MarkovMean>),
}

impl Centering {
    /// Picks the centering matching the model family.
    pub fn for_model(model: &MarkovModel, tol: f64) -> Result<Self> {
        Ok(match model.family() {
            ModelFamily::Uniform => Self::Uniform { b: model.b() },
            ModelFamily::AsymBernoulli { p } => Self::AsymBernoulli { p },
            ModelFamily::General => Self::Markov(Arc::new(MarkovMean::new(model, tol)?)),
        })
    }

    pub fn at(&self, t: f64) -> f64 {
        match self {
            Self::Uniform { b } => *b as f64 / (*b as f64 - 1.0),
            Self::AsymBernoulli { p } => mean_asyb(t, *p),
            Self::Markov(m) => m.eval(t),
        }
    }
}

/// Selects `rank` (1-based) and counts the bucket operations on the way.
pub fn select(data: &mut DataSet, rank: usize) -> Result<SelectionResult> {
    let n = data.len();
    if rank == 0 || rank > n {
        return Err(Error::RankOutOfRange { rank, n });
    }
    let b = data.b();
    let cap = data.depth_cap();
    let mut bucket: Vec<u32> = (0..n as u32).collect();
    let mut digits: Vec<u8> = Vec::with_capacity(n);
    let mut counts = vec![0usize; b];
    let mut rank_in_bucket = rank;
    let mut ops = 0u64;
    let mut prefix = Vec::new();

    while bucket.len() > 1 {
        let depth = prefix.len() + 1;
        if depth > cap {
            return Err(Error::DuplicateData {
                size: bucket.len(),
                cap,
            });
        }
        ops += bucket.len() as u64;
        digits.clear();
        counts.fill(0);
        for &i in &bucket {
            let d = data.digit_at(i as usize, depth)?;
            counts[usize::from(d)] += 1;
            digits.push(d);
        }
        // Sub-bucket r holds ranks F_{r-1} + 1 ..= F_r.
        let mut below = 0;
        let mut target = 0;
        for (r, &c) in counts.iter().enumerate() {
            if rank_in_bucket <= below + c {
                target = r;
                break;
            }
            below += c;
        }
        rank_in_bucket -= below;
        let target = target as u8;
        let mut k = 0;
        for j in 0..bucket.len() {
            if digits[j] == target {
                bucket[k] = bucket[j];
                k += 1;
            }
        }
        bucket.truncate(k);
        prefix.push(target);
    }

    Ok(SelectionResult {
        rank,
        ops,
        depth: prefix.len(),
        selected_prefix: prefix,
    })
}

struct Frame {
    start: usize,
    end: usize,
    depth: usize,
    path_ops: u64,
}

/// Computes `Y_n(l)` for all ranks in one depth-first pass over the radix
/// trie of the data.
///
/// Each node is partitioned once by a counting sort, so segment `[start, end)`
/// of the working permutation holds exactly the ranks `start + 1 ..= end`. A
/// leaf of size one at offset `start` records the summed sizes of its
/// ancestors as `Y_n(start + 1)`.
pub fn profile(data: &mut DataSet) -> Result<ComplexityProfile> {
    let n = data.len();
    let b = data.b();
    let cap = data.depth_cap();
    let mut y = vec![0u64; n];
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut scratch: Vec<u32> = vec![0; n];
    let mut digits: Vec<u8> = Vec::with_capacity(n);
    let mut counts = vec![0usize; b];
    let mut max_depth = 0;

    let mut stack = vec![Frame {
        start: 0,
        end: n,
        depth: 1,
        path_ops: 0,
    }];
    while let Some(Frame {
        start,
        end,
        depth,
        path_ops,
    }) = stack.pop()
    {
        let size = end - start;
        if size == 1 {
            y[start] = path_ops;
            continue;
        }
        if size == 0 {
            continue;
        }
        if depth > cap {
            return Err(Error::DuplicateData { size, cap });
        }
        max_depth = max_depth.max(depth);
        let path_ops = path_ops + size as u64;

        digits.clear();
        counts.fill(0);
        for &i in &order[start..end] {
            let d = data.digit_at(i as usize, depth)?;
            counts[usize::from(d)] += 1;
            digits.push(d);
        }
        let mut offsets = Vec::with_capacity(b + 1);
        let mut acc = start;
        offsets.push(acc);
        for &c in &counts {
            acc += c;
            offsets.push(acc);
        }
        let mut cursor = offsets[..b].to_vec();
        for (k, &i) in order[start..end].iter().enumerate() {
            let d = usize::from(digits[k]);
            scratch[cursor[d]] = i;
            cursor[d] += 1;
        }
        order[start..end].copy_from_slice(&scratch[start..end]);

        for r in (0..b).rev() {
            if offsets[r + 1] > offsets[r] {
                stack.push(Frame {
                    start: offsets[r],
                    end: offsets[r + 1],
                    depth: depth + 1,
                    path_ops,
                });
            }
        }
    }

    Ok(ComplexityProfile { n, b, y, max_depth })
}

/// `X_n(t) = (Y_n(floor(tn) + 1) - c(t) n) / sqrt(n)` on the given grid.
pub fn normalize_profile(
    profile: &ComplexityProfile,
    grid: &[f64],
    centering: &Centering,
) -> Result<GridProcess> {
    if profile.n == 0 {
        return Err(Error::EmptySample);
    }
    check_grid(grid)?;
    let n = profile.n as f64;
    let sqrt_n = n.sqrt();
    let values = grid
        .iter()
        .map(|&t| (profile.y(rank_at(t, profile.n)) as f64 - centering.at(t) * n) / sqrt_n)
        .collect();
    GridProcess::new(grid.to_vec(), values, ProcessKind::EmpiricalXn)
}

/// Rank `floor(tn) + 1`, clamped to `n` (the `Y_n(n+1) := Y_n(n)` convention).
pub fn rank_at(t: f64, n: usize) -> usize {
    ((t * n as f64).floor() as usize + 1).min(n)
}

/// Normalized worst case `sup_l (Y_n(l) - c(l/n) n) / sqrt(n)`.
pub fn worst_case(profile: &ComplexityProfile, centering: &Centering) -> Result<f64> {
    if profile.n == 0 {
        return Err(Error::EmptySample);
    }
    let n = profile.n as f64;
    Ok(profile
        .values()
        .iter()
        .enumerate()
        .map(|(k, &y)| (y as f64 - centering.at((k + 1) as f64 / n) * n) / n.sqrt())
        .fold(f64::NEG_INFINITY, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov_source::gen_dataset;

    fn binary_uniform() -> Arc<MarkovModel> {
        Arc::new(MarkovModel::uniform(2).unwrap())
    }

    fn three_data() -> DataSet {
        DataSet::with_prefixes(binary_uniform(), 1, &[vec![0, 0], vec![0, 1], vec![1]]).unwrap()
    }

    #[test]
    fn single_datum_costs_nothing() {
        let mut ds = gen_dataset(&MarkovModel::uniform(2).unwrap(), 1, 0);
        let r = select(&mut ds, 1).unwrap();
        assert_eq!((r.ops, r.depth), (0, 0));
        assert_eq!(profile(&mut ds).unwrap().values(), &[0]);
    }

    #[test]
    fn two_data_split_at_root() {
        let mut ds = DataSet::with_prefixes(binary_uniform(), 0, &[vec![0], vec![1]]).unwrap();
        let r = select(&mut ds, 1).unwrap();
        assert_eq!(r.ops, 2);
        assert_eq!(r.selected_prefix, vec![0]);
    }

    #[test]
    fn hand_traced_three_data() {
        let mut ds = three_data();
        assert_eq!(select(&mut ds, 3).unwrap().ops, 3);
        let r1 = select(&mut ds, 1).unwrap();
        assert_eq!(r1.ops, 5);
        assert_eq!(r1.selected_prefix, vec![0, 0]);
        assert_eq!(profile(&mut ds).unwrap().values(), &[5, 5, 3]);
    }

    #[test]
    fn rank_out_of_range() {
        let mut ds = three_data();
        assert_eq!(
            select(&mut ds, 0),
            Err(Error::RankOutOfRange { rank: 0, n: 3 })
        );
        assert_eq!(
            select(&mut ds, 4),
            Err(Error::RankOutOfRange { rank: 4, n: 3 })
        );
    }

    #[test]
    fn duplicates_hit_the_depth_cap() {
        let digits = vec![1u8; 10];
        let mut ds = DataSet::with_prefixes(binary_uniform(), 3, &[digits.clone(), digits])
            .unwrap()
            .with_depth_cap(10);
        assert_eq!(
            select(&mut ds, 1),
            Err(Error::DuplicateData { size: 2, cap: 10 })
        );
        assert_eq!(
            profile(&mut ds),
            Err(Error::DuplicateData { size: 2, cap: 10 })
        );
    }

    #[test]
    fn profile_matches_select_for_every_rank() {
        let models = [
            MarkovModel::uniform(2).unwrap(),
            MarkovModel::uniform(3).unwrap(),
            MarkovModel::bernoulli(0.7).unwrap(),
            MarkovModel::binary(0.5, 0.3, 0.6).unwrap(),
        ];
        for (mi, m) in models.iter().enumerate() {
            for seed in 0..25 {
                let n = 1 + (seed as usize * 7) % 64;
                let mut ds = gen_dataset(m, n, seed + 100 * mi as u64);
                let prof = profile(&mut ds).unwrap();
                for rank in 1..=n {
                    assert_eq!(prof.y(rank), select(&mut ds, rank).unwrap().ops);
                }
                if n >= 2 {
                    assert!(prof.values().iter().all(|&y| y >= n as u64));
                    assert!(prof
                        .values()
                        .iter()
                        .all(|&y| y <= (n * prof.max_depth) as u64));
                }
            }
        }
    }

    #[test]
    fn normalization_conventions() {
        let n = 16;
        let prof = ComplexityProfile::from_values(2, vec![2 * n as u64; n]);
        let c = Centering::Uniform { b: 2 };
        let x = normalize_profile(&prof, &[0.0, 0.5, 1.0], &c).unwrap();
        assert!(x.values().iter().all(|&v| v == 0.0));

        let prof = ComplexityProfile::from_values(2, vec![1, 2, 3, 4]);
        let x = normalize_profile(&prof, &[1.0], &c).unwrap();
        assert_eq!(x.values()[0], (4.0 - 8.0) / 2.0);
        assert_eq!(rank_at(1.0, 4), 4);
        assert_eq!(rank_at(0.0, 4), 1);
        assert_eq!(rank_at(0.25, 4), 2);

        let asyb = Centering::AsymBernoulli { p: 0.7 };
        assert!((asyb.at(0.0) - 1.0 / 0.7).abs() < 1e-15);
        assert!(normalize_profile(&prof, &[0.5, 0.5], &c).is_err());
    }

    #[test]
    fn worst_case_values() {
        let prof = ComplexityProfile::from_values(2, vec![5, 5, 3]);
        let w = worst_case(&prof, &Centering::Uniform { b: 2 }).unwrap();
        assert!((w + 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let flat = ComplexityProfile::from_values(2, vec![8; 4]);
        assert_eq!(
            worst_case(&flat, &Centering::Uniform { b: 2 }).unwrap(),
            0.0
        );
        let one = ComplexityProfile::from_values(2, vec![0]);
        assert_eq!(
            worst_case(&one, &Centering::Uniform { b: 2 }).unwrap(),
            -2.0
        );
    }

    #[test]
    fn centering_for_model() {
        let c = Centering::for_model(&MarkovModel::bernoulli(0.7).unwrap(), 1e-9).unwrap();
        assert!(matches!(c, Centering::AsymBernoulli { .. }));
        let c = Centering::for_model(&MarkovModel::uniform(3).unwrap(), 1e-9).unwrap();
        assert_eq!(c.at(0.3), 1.5);
    }
}
