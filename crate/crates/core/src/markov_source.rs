//! Markov source models and lazily realized data strings.
//!
//! A datum is an infinite string over `{0, .., b-1}` whose symbols follow a
//! homogeneous Markov chain: the first symbol is drawn from `mu`, every later
//! symbol from the row of `P` indexed by its predecessor. Radix Selection only
//! ever inspects a short prefix of each datum, so digits are realized on
//! demand from a per-datum random substream.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::seeding::{substream_key, Domain};

/// Deepest digit position any stream will realize unless configured otherwise.
pub const DEFAULT_DEPTH_CAP: usize = 256;

const PROB_TOL: f64 = 1e-12;

/// On-disk model schema: `{"b": int, "mu": [..], "P": [[..], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModelDocument {
    b: usize,
    mu: Vec<f64>,
    #[serde(rename = "P")]
    p: Vec<Vec<f64>>,
}

/// The three model families with their own limit theory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelFamily {
    /// All symbols i.i.d. uniform on the alphabet.
    Uniform,
    /// `b = 2`, i.i.d. bits equal to 1 with probability `p != 1/2`.
    AsymBernoulli { p: f64 },
    /// Anything else.
    General,
}

/// Validated Markov source: alphabet size, initial distribution and
/// row-stochastic transition matrix with every entry strictly below 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelDocument", into = "ModelDocument")]
pub struct MarkovModel {
    b: usize,
    mu: Vec<f64>,
    p: Vec<f64>,
    // Cumulative sums for inverse-transform sampling; row `b` is `mu`.
    cum: Vec<f64>,
}

impl MarkovModel {
    /// Validates and builds a model.
    pub fn new(b: usize, mu: Vec<f64>, p: Vec<Vec<f64>>) -> Result<Self> {
        if !(2..=256).contains(&b) {
            return Err(Error::AlphabetSize(b));
        }
        if mu.len() != b {
            return Err(Error::Dimension {
                what: "mu",
                expected: b,
                got: mu.len(),
            });
        }
        if p.len() != b {
            return Err(Error::Dimension {
                what: "P",
                expected: b,
                got: p.len(),
            });
        }
        for row in &p {
            if row.len() != b {
                return Err(Error::Dimension {
                    what: "row of P",
                    expected: b,
                    got: row.len(),
                });
            }
        }
        check_distribution("mu".to_string(), &mu)?;
        for (i, row) in p.iter().enumerate() {
            check_distribution(format!("row {i} of P"), row)?;
            if let Some(j) = row.iter().position(|&x| x >= 1.0) {
                return Err(Error::AbsorbingTransition { from: i, to: j });
            }
        }

        let flat: Vec<f64> = p.into_iter().flatten().collect();
        let mut cum = Vec::with_capacity(b * (b + 1));
        for row in flat.chunks(b).chain(std::iter::once(mu.as_slice())) {
            let mut acc = 0.0;
            for &x in row {
                acc += x;
                cum.push(acc);
            }
            // Guard the inverse transform against rounding in the last sum.
            *cum.last_mut().unwrap() = f64::INFINITY;
        }
        Ok(Self {
            b,
            mu,
            p: flat,
            cum,
        })
    }

    /// The uniform model on `b` symbols.
    pub fn uniform(b: usize) -> Result<Self> {
        let x = 1.0 / b as f64;
        Self::new(b, vec![x; b], vec![vec![x; b]; b])
    }

    /// The asymmetric Bernoulli model: `mu = (1-p, p)` and both rows `(1-p, p)`.
    ///
    /// `p = 1/2` is accepted and yields the binary uniform model.
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "Bernoulli parameter {p} outside (0, 1)"
            )));
        }
        let row = vec![1.0 - p, p];
        Self::new(2, row.clone(), vec![row.clone(), row])
    }

    /// Binary Markov model from `mu0` and the diagonal `(p00, p11)`.
    pub fn binary(mu0: f64, p00: f64, p11: f64) -> Result<Self> {
        Self::new(
            2,
            vec![mu0, 1.0 - mu0],
            vec![vec![p00, 1.0 - p00], vec![1.0 - p11, p11]],
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::ModelDocument(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    /// Transition probability `p_ij`.
    pub fn p(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.b + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.p[i * self.b..(i + 1) * self.b]
    }

    pub fn p_max(&self) -> f64 {
        self.p.iter().copied().fold(0.0, f64::max)
    }

    pub fn family(&self) -> ModelFamily {
        let u = 1.0 / self.b as f64;
        let close = |x: f64, y: f64| (x - y).abs() <= PROB_TOL;
        if self.mu.iter().chain(&self.p).all(|&x| close(x, u)) {
            return ModelFamily::Uniform;
        }
        if self.b == 2 {
            let p = self.mu[1];
            if close(self.p(0, 1), p) && close(self.p(1, 1), p) {
                return ModelFamily::AsymBernoulli { p };
            }
        }
        ModelFamily::General
    }

    /// Draws the symbol following `prev` (or the initial symbol) from a
    /// uniform variate `u` in `[0, 1)`.
    #[inline]
    fn symbol(&self, prev: Option<u8>, u: f64) -> u8 {
        let row = prev.map_or(self.b, usize::from);
        let cum = &self.cum[row * self.b..(row + 1) * self.b];
        cum.iter().position(|&c| u < c).unwrap_or(self.b - 1) as u8
    }
}

fn check_distribution(what: String, xs: &[f64]) -> Result<()> {
    if let Some(&value) = xs.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::NotAProbability { what, value });
    }
    let sum: f64 = xs.iter().sum();
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(Error::NotNormalized { what, sum });
    }
    Ok(())
}

impl TryFrom<ModelDocument> for MarkovModel {
    type Error = Error;

    fn try_from(doc: ModelDocument) -> Result<Self> {
        Self::new(doc.b, doc.mu, doc.p)
    }
}

impl From<MarkovModel> for ModelDocument {
    fn from(m: MarkovModel) -> Self {
        let p = m.p.chunks(m.b).map(<[f64]>::to_vec).collect();
        ModelDocument {
            b: m.b,
            mu: m.mu,
            p,
        }
    }
}

/// One datum: the realized digit prefix plus the substream that extends it.
#[derive(Debug, Clone)]
pub struct DigitStream {
    realized: SmallVec<[u8; 32]>,
    rng: Xoshiro256PlusPlus,
}

impl DigitStream {
    pub fn new(key: u64) -> Self {
        Self {
            realized: SmallVec::new(),
            rng: Xoshiro256PlusPlus::seed_from_u64(key),
        }
    }

    /// Stream whose first digits are fixed; later digits continue the chain.
    pub fn with_prefix(key: u64, prefix: &[u8]) -> Self {
        let mut s = Self::new(key);
        s.realized.extend_from_slice(prefix);
        s
    }

    /// Digit `s_i` (1-based), realizing the prefix up to `i` if needed.
    #[inline]
    pub fn digit_at(&mut self, model: &MarkovModel, i: usize, cap: usize) -> Result<u8> {
        if let Some(&d) = i.checked_sub(1).and_then(|k| self.realized.get(k)) {
            return Ok(d);
        }
        if i == 0 {
            return Err(Error::InvalidParameter("digit positions start at 1".into()));
        }
        if i > cap {
            return Err(Error::DepthCap { position: i, cap });
        }
        while self.realized.len() < i {
            let u: f64 = self.rng.random();
            let d = model.symbol(self.realized.last().copied(), u);
            self.realized.push(d);
        }
        Ok(self.realized[i - 1])
    }

    pub fn realized(&self) -> &[u8] {
        &self.realized
    }
}

/// `n` independent data strings generated from one model under one seed.
#[derive(Debug, Clone)]
pub struct DataSet {
    model: Arc<MarkovModel>,
    seed: u64,
    cap: usize,
    streams: Vec<DigitStream>,
}

impl DataSet {
    pub fn new(model: Arc<MarkovModel>, n: usize, seed: u64) -> Self {
        let streams = (0..n as u64)
            .map(|i| DigitStream::new(substream_key(seed, Domain::Datum, i)))
            .collect();
        Self {
            model,
            seed,
            cap: DEFAULT_DEPTH_CAP,
            streams,
        }
    }

    /// Data with prescribed leading digits. Digits past each prefix are drawn
    /// from the chain, conditioned on the last prescribed symbol.
    pub fn with_prefixes(model: Arc<MarkovModel>, seed: u64, prefixes: &[Vec<u8>]) -> Result<Self> {
        let b = model.b();
        if let Some(&d) = prefixes.iter().flatten().find(|&&d| usize::from(d) >= b) {
            return Err(Error::InvalidParameter(format!(
                "symbol {d} outside alphabet of size {b}"
            )));
        }
        let streams = prefixes
            .iter()
            .enumerate()
            .map(|(i, p)| DigitStream::with_prefix(substream_key(seed, Domain::Datum, i as u64), p))
            .collect();
        Ok(Self {
            model,
            seed,
            cap: DEFAULT_DEPTH_CAP,
            streams,
        })
    }

    pub fn with_depth_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn len(&self) -> usize {
        self.streams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.streams.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn depth_cap(&self) -> usize {
        self.cap
    }

    pub fn model(&self) -> &MarkovModel {
        &self.model
    }

    pub fn b(&self) -> usize {
        self.model.b()
    }

    /// Digit `i` (1-based) of datum `idx` (0-based).
    #[inline]
    pub fn digit_at(&mut self, idx: usize, i: usize) -> Result<u8> {
        self.streams[idx].digit_at(&self.model, i, self.cap)
    }

    /// The first `len` digits of datum `idx`.
    pub fn prefix(&mut self, idx: usize, len: usize) -> Result<Vec<u8>> {
        (1..=len).map(|i| self.digit_at(idx, i)).collect()
    }

    pub fn streams(&self) -> &[DigitStream] {
        &self.streams
    }
}

/// Generates `n` independent data; stream `i` is keyed by `(seed, i)`.
pub fn gen_dataset(model: &MarkovModel, n: usize, seed: u64) -> DataSet {
    DataSet::new(Arc::new(model.clone()), n, seed)
}

/// `sum_i s_i b^{-i}` over a finite digit prefix.
pub fn value_of_prefix(digits: &[u8], b: usize) -> f64 {
    let b = b as f64;
    digits
        .iter()
        .rev()
        .fold(0.0, |acc, &d| (f64::from(d) + acc) / b)
}
