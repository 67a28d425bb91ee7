//! Closed-form and recursively defined limit quantities.

mod kappa;
mod mean;
mod prefix;
mod skew;

pub use kappa::{kappa_mu, kappas, KappaConstants};
pub use mean::{
    breakpoints, mean_markov, MarkovMean, MeanFunctionTable, MAX_DESCENT_DEPTH, TABLE_BUDGET,
};
pub use prefix::{cov_uniform, lcp, metric_d, metric_db, Expansion, PrefixLen, PREFIX_CAP};
pub use skew::{cov_asyb, mean_asyb, r_index, skew_path, SkewPath};
