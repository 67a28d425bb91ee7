//! Radix Selection on Markov sources.
//!
//! The crate covers four layers:
//!
//! * [`markov_source`]: Markov source models and lazily realized, reproducible
//!   digit streams.
//! * [`radix_select`]: instrumented Radix Selection counting bucket operations,
//!   both per rank and for the whole complexity profile at once.
//! * [`theory`]: closed-form and recursively defined limit quantities
//!   (covariance kernels, mean functions, grand-average constants).
//! * [`limit_sim`] and [`experiments`]: samplers for the limit objects and the
//!   Monte Carlo harness that compares simulation against theory.
//!
//! [`validation`] bundles the end-to-end checks used by the acceptance suite
//! and by `radix-select validate`.

pub mod error;
pub mod experiments;
pub mod limit_sim;
pub mod markov_source;
pub mod radix_select;
pub mod seeding;
pub mod theory;
pub mod validation;

pub use error::{Error, Result};
pub use experiments::{
    default_grid, grand_average_experiment, grid_of_depth, quantile_experiment, sampler_draws,
    summarize, wasserstein1, worst_case_experiment, Budget, CheckRow, EstimatorSummary, RunConfig,
    Summary, Tolerances,
};
pub use limit_sim::{
    sample_g_asyb, sample_g_uniform, sample_upsilon, sample_z_mu, sample_z_mu_quantile,
    sample_z_pair, sup_tail_check, AsymBernoulliSampler, TailBound, TailRow, UpsilonVector,
    ZSample,
};
pub use markov_source::{
    gen_dataset, value_of_prefix, DataSet, DigitStream, MarkovModel, ModelFamily, DEFAULT_DEPTH_CAP,
};
pub use radix_select::{
    normalize_profile, profile, select, worst_case, Centering, ComplexityProfile, GridProcess,
    ProcessKind, SelectionResult,
};
pub use theory::{
    breakpoints, cov_asyb, cov_uniform, kappa_mu, kappas, lcp, mean_asyb, mean_markov, metric_d,
    metric_db, r_index, skew_path, KappaConstants, MarkovMean, MeanFunctionTable, PrefixLen,
    SkewPath,
};
