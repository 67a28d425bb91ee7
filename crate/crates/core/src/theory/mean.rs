//! Mean functions `m_0`, `m_1`, `m_mu` of a binary Markov source.
//!
//! Level `n` of the decomposition `D^i_n` cuts `[0, 1]` into the `2^n`
//! intervals of data whose first `n` digits are fixed. An interval whose last
//! digit is `d` splits at `p_{d0} * right + p_{d1} * left`. `m_i(t)` is one plus
//! the summed lengths of the intervals containing `t`.

use crate::error::{Error, Result};
use crate::markov_source::MarkovModel;

/// Total number of breakpoints a [`MeanFunctionTable`] may hold.
pub const TABLE_BUDGET: usize = 1 << 24;

/// Deepest level [`MarkovMean`] will descend to.
pub const MAX_DESCENT_DEPTH: usize = 100_000;

type Matrix2 = [[f64; 2]; 2];

fn binary_matrix(model: &MarkovModel) -> Result<Matrix2> {
    if model.b() != 2 {
        return Err(Error::NotBinary(model.b()));
    }
    Ok([
        [model.p(0, 0), model.p(0, 1)],
        [model.p(1, 0), model.p(1, 1)],
    ])
}

#[inline]
fn split(p: &Matrix2, last: usize, left: f64, right: f64) -> f64 {
    p[last][0] * right + p[last][1] * left
}

/// Explicit breakpoint sets `D^i_1, ..., D^i_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanFunctionTable {
    p: Matrix2,
    pub start_state: usize,
    pub depth: usize,
    pub p_max: f64,
    levels: Vec<Vec<f64>>,
}

/// Builds `D^i_n` for `n = 1..=depth` by the midpoint-insertion recursion.
pub fn breakpoints(
    model: &MarkovModel,
    start_state: usize,
    depth: usize,
) -> Result<MeanFunctionTable> {
    let p = binary_matrix(model)?;
    if start_state > 1 || depth == 0 {
        return Err(Error::InvalidParameter(format!(
            "need start state in {{0, 1}} and depth >= 1, got {start_state} and {depth}"
        )));
    }
    let total = if depth >= usize::BITS as usize - 2 {
        usize::MAX
    } else {
        (1usize << (depth + 1)) + depth
    };
    if total > TABLE_BUDGET {
        return Err(Error::TableBudget {
            depth,
            budget: TABLE_BUDGET,
        });
    }

    let mut levels = vec![vec![0.0, p[start_state][0], 1.0]];
    for _ in 1..depth {
        let prev = levels.last().unwrap();
        let mut next = Vec::with_capacity(2 * prev.len() - 1);
        for (k, w) in prev.windows(2).enumerate() {
            next.push(w[0]);
            next.push(split(&p, k % 2, w[0], w[1]));
        }
        next.push(1.0);
        levels.push(next);
    }
    Ok(MeanFunctionTable {
        p,
        start_state,
        depth,
        p_max: model.p_max(),
        levels,
    })
}

impl MeanFunctionTable {
    /// `D^i_n`, sorted, `2^n + 1` points.
    pub fn level(&self, n: usize) -> &[f64] {
        &self.levels[n - 1]
    }

    /// `lambda^i_n(t)`: length of the half-open level-`n` interval holding `t`
    /// (the last interval is closed).
    pub fn interval_length(&self, n: usize, t: f64) -> f64 {
        let pts = self.level(n);
        let k = pts.partition_point(|&x| x <= t).clamp(1, pts.len() - 1);
        pts[k] - pts[k - 1]
    }

    /// `1 + sum_{n <= depth} lambda_n(t)`, the truncated right-continuous `m_i`.
    pub fn truncated_mean(&self, t: f64) -> f64 {
        1.0 + (1..=self.depth)
            .map(|n| self.interval_length(n, t))
            .sum::<f64>()
    }

    pub fn transition(&self) -> Matrix2 {
        self.p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    /// Intervals `[a, b)`: the right-hand limit.
    Right,
    /// Intervals `(a, b]`: the left-hand limit.
    Left,
}

/// Evaluator for `m_0`, `m_1` and `m_mu` with a certified truncation bound.
///
/// Evaluation walks down the decomposition along `t`, one split per level,
/// so no breakpoint table is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovMean {
    p: Matrix2,
    mu0: f64,
    depth: usize,
    tail: f64,
}

impl MarkovMean {
    /// Chooses the smallest depth `N` whose tail `p_max^{N+1} / (1 - p_max)`
    /// is at most `tol`.
    pub fn new(model: &MarkovModel, tol: f64) -> Result<Self> {
        let p = binary_matrix(model)?;
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tolerance {tol} must be positive"
            )));
        }
        let p_max = model.p_max();
        let tail_at = |n: usize| p_max.powi(n as i32 + 1) / (1.0 - p_max);
        let mut depth = ((tol * (1.0 - p_max)).ln() / p_max.ln() - 1.0)
            .ceil()
            .max(1.0);
        if !depth.is_finite() || depth > MAX_DESCENT_DEPTH as f64 {
            return Err(Error::TruncationBudget {
                tol,
                p_max,
                max_depth: MAX_DESCENT_DEPTH,
            });
        }
        // Guard against rounding in the logarithms.
        while tail_at(depth as usize) > tol {
            depth += 1.0;
        }
        let depth = depth as usize;
        Ok(Self {
            p,
            mu0: model.mu()[0],
            depth,
            tail: tail_at(depth),
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Upper bound on the neglected part of each `m_i`.
    pub fn tail_bound(&self) -> f64 {
        self.tail
    }

    fn descend(&self, start: usize, u: f64, side: Side, levels: usize) -> f64 {
        let (mut a, mut b) = (0.0, 1.0);
        let mut last = start;
        let mut sum = 1.0;
        for _ in 0..levels {
            let s = split(&self.p, last, a, b);
            let left_child = match side {
                Side::Right => u < s,
                Side::Left => u <= s,
            };
            if left_child {
                b = s;
                last = 0;
            } else {
                a = s;
                last = 1;
            }
            sum += b - a;
        }
        sum
    }

    /// `m_i(u)` for start state `i`, averaging one-sided limits at breakpoints.
    pub fn m_state(&self, state: usize, u: f64) -> f64 {
        let right = self.descend(state, u, Side::Right, self.depth);
        if u >= 1.0 {
            return self.descend(state, u, Side::Left, self.depth);
        }
        if u <= 0.0 {
            return right;
        }
        let left = self.descend(state, u, Side::Left, self.depth);
        0.5 * (left + right)
    }

    fn one_sided(&self, t: f64, side: Side, levels: usize) -> f64 {
        let mu0 = self.mu0;
        let lower = match side {
            Side::Right => t < mu0,
            Side::Left => t <= mu0,
        };
        if lower {
            mu0 * self.descend(0, t / mu0, side, levels) + 1.0
        } else {
            (1.0 - mu0) * self.descend(1, (t - mu0) / (1.0 - mu0), side, levels) + 1.0
        }
    }

    /// `m_mu(t)`; at points of `D^mu_inf` the average of both one-sided limits.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            self.one_sided(0.0, Side::Right, self.depth)
        } else if t >= 1.0 {
            self.one_sided(1.0, Side::Left, self.depth)
        } else {
            0.5 * (self.one_sided(t, Side::Left, self.depth)
                + self.one_sided(t, Side::Right, self.depth))
        }
    }

    /// Whether `t` is (to within `1e-12`) a point of the decomposition: `mu0`
    /// or a split point of one of the first `levels` levels below it.
    ///
    /// The descent stops once the interval around `t` is shorter than `1e-8`;
    /// below that, matches within `1e-12` would be coincidences.
    pub fn is_breakpoint(&self, t: f64, levels: usize) -> bool {
        const EPS: f64 = 1e-12;
        const FINEST: f64 = 1e-8;
        if t <= 0.0 || t >= 1.0 {
            return false;
        }
        if (t - self.mu0).abs() <= EPS {
            return true;
        }
        let (mut a, mut b, mut last) = if t < self.mu0 {
            (0.0, self.mu0, 0)
        } else {
            (self.mu0, 1.0, 1)
        };
        for _ in 0..levels {
            if b - a <= FINEST {
                break;
            }
            let s = split(&self.p, last, a, b);
            if (t - s).abs() <= EPS {
                return true;
            }
            if t < s {
                b = s;
                last = 0;
            } else {
                a = s;
                last = 1;
            }
        }
        false
    }
}

/// `m_mu(t)` evaluated to within `tol`.
pub fn mean_markov(t: f64, model: &MarkovModel, tol: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} outside [0, 1]")));
    }
    Ok(MarkovMean::new(model, tol)?.eval(t))
}
