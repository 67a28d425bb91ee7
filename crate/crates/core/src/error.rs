use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {what} has length {got}, expected {expected}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("alphabet size {0} is not supported (need 2 <= b <= 256)")]
    AlphabetSize(usize),

    #[error("{what} entry {value} is not a probability")]
    NotAProbability { what: String, value: f64 },

    #[error("{what} sums to {sum}, not 1")]
    NotNormalized { what: String, sum: f64 },

    #[error("transition probability p[{from}][{to}] = 1 is not allowed")]
    AbsorbingTransition { from: usize, to: usize },

    #[error("digit position {position} exceeds the depth cap {cap}")]
    DepthCap { position: usize, cap: usize },

    #[error(
        "bucket of {size} data still unresolved at depth cap {cap}; the data contain duplicates"
    )]
    DuplicateData { size: usize, cap: usize },

    #[error("rank {rank} is outside 1..={n}")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("operation requires a binary (b = 2) model, got b = {0}")]
    NotBinary(usize),

    #[error("kappa denominator vanishes for p00 = {p00}, p11 = {p11}")]
    DegenerateKappa { p00: f64, p11: f64 },

    #[error("breakpoint table of depth {depth} exceeds the budget of {budget} points")]
    TableBudget { depth: usize, budget: usize },

    #[error("tolerance {tol} needs truncation depth above {max_depth} (p_max = {p_max})")]
    TruncationBudget {
        tol: f64,
        p_max: f64,
        max_depth: usize,
    },

    #[error("covariance matrix is not positive definite at grid point {t} (most correlated with {partner}) after jitter {jitter}")]
    NotPositiveDefinite { t: f64, partner: f64, jitter: f64 },

    #[error("tree of depth {depth} with branching {b} exceeds the sampler budget")]
    TreeBudget { b: usize, depth: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty sample")]
    EmptySample,

    #[error("model document: {0}")]
    ModelDocument(String),
}
