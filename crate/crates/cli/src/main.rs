//! `radix-select`: limit theory, simulation and validation from the shell.
//!
//! Exit codes: 0 success, 1 a checked statistic missed its tolerance,
//! 2 usage error, 3 runtime error.

mod model_arg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use radix_select_core::experiments::fmt_sig;
use radix_select_core::limit_sim::Z_ITERATIONS;
use radix_select_core::validation::{run_selected, CriterionResult};
use radix_select_core::{
    cov_asyb, cov_uniform, gen_dataset, grid_of_depth, kappa_mu, lcp, sample_g_uniform,
    sample_z_mu, sample_z_mu_quantile, sampler_draws, value_of_prefix, AsymBernoulliSampler,
    Budget, Centering, EstimatorSummary, GridProcess, RunConfig, Tolerances, DEFAULT_DEPTH_CAP,
};

use model_arg::{parse_model, ModelArg};

#[derive(Parser, Debug)]
#[command(
    name = "radix-select",
    version,
    about = "Radix Selection on Markov sources"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate limit-theory quantities.
    Theory(TheoryArgs),
    /// Run Monte Carlo experiments and limit samplers.
    #[command(subcommand)]
    Simulate(Simulate),
    /// Run the validation criteria.
    Validate(ValidateArgs),
    /// Print the leading digits of a generated data set.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct TheoryArgs {
    #[command(subcommand)]
    command: Theory,
    /// `text` prints bare values; `json` adds the resolved inputs.
    #[arg(long, global = true, value_enum, default_value_t = TheoryFormat::Text)]
    format: TheoryFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum TheoryFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Theory {
    /// Covariance of the uniform limit process at (s, t).
    CovUniform {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 2)]
        b: usize,
    },
    /// Covariance of the asymmetric Bernoulli limit process at (s, t).
    CovAsyb {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Centering function of the model at the given points.
    Mean {
        #[arg(long, value_parser = parse_model)]
        model: ModelArg,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Grand-average constants kappa_0, kappa_1, kappa_mu.
    Kappa {
        #[arg(long, value_parser = parse_model)]
        model: ModelArg,
    },
    /// Length of the common prefix of the b-ary expansions of s and t.
    Lcp {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 2)]
        b: usize,
        #[arg(long, default_value_t = 256)]
        cap: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Simulate {
    /// Quantile process: means and covariances of X_n on a grid.
    Process(RunArgs),
    /// Cost of selecting a uniformly random rank.
    GrandAverage(RunArgs),
    /// Worst case over ranks against the supremum of the limit process.
    WorstCase(RunArgs),
    /// Paths of the uniform limit process on the b-adic grid of depth K.
    LimitG(LimitGArgs),
    /// Paths of the asymmetric Bernoulli limit process on {k 2^-d}.
    LimitGAsyb(LimitGAsybArgs),
    /// Draws of the limit Z_mu of the normalized random-rank cost.
    LimitZ(LimitZArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum ReportFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long)]
    seed: u64,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value = "uniform", value_parser = parse_model)]
    model: ModelArg,
    #[arg(long, default_value_t = 1 << 14)]
    n: usize,
    #[arg(long, default_value_t = 200)]
    reps: usize,
    #[command(flatten)]
    output: OutputArgs,
    /// Grid {k b^-d} plus the tenths (default d = 3).
    #[arg(long, conflicts_with = "grid")]
    grid_depth: Option<u32>,
    /// Explicit comma-separated grid in [0, 1].
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
    depth_cap: usize,
    /// Tolerance for evaluating the centering function.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// JSON file overriding the check tolerances.
    #[arg(long)]
    tolerances: Option<PathBuf>,
    /// Largest common prefix at which covariances are checked, or `none`.
    #[arg(long, value_parser = parse_prefix_cap)]
    cov_max_prefix: Option<PrefixCap>,
    #[arg(long, default_value_t = 10)]
    tree_depth: usize,
    #[arg(long, default_value_t = 8)]
    asyb_grid_depth: usize,
    #[arg(long, default_value_t = 10_000)]
    limit_draws: usize,
    #[arg(long, default_value_t = 1e-10)]
    jitter: f64,
    #[arg(long, default_value_t = 10_000)]
    quadrature_points: usize,
}

#[derive(Debug, Clone, Copy)]
struct PrefixCap(Option<usize>);

fn parse_prefix_cap(s: &str) -> Result<PrefixCap, String> {
    if s == "none" {
        return Ok(PrefixCap(None));
    }
    s.parse()
        .map(|k| PrefixCap(Some(k)))
        .map_err(|_| format!("expected an integer or `none`, got `{s}`"))
}

#[derive(Args, Debug)]
struct LimitGArgs {
    #[arg(long, default_value_t = 2)]
    b: usize,
    /// Tree depth K.
    #[arg(long, default_value_t = 10)]
    depth: usize,
    #[arg(long, default_value_t = 1)]
    draws: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct LimitGAsybArgs {
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 8)]
    grid_depth: u32,
    #[arg(long, default_value_t = 1)]
    draws: usize,
    #[arg(long, default_value_t = 1e-10)]
    jitter: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum ZMethod {
    /// Iterate the two-type fixed-point system.
    FixedPoint,
    /// Evaluate the centering function at a uniform point.
    Quantile,
}

#[derive(Args, Debug)]
struct LimitZArgs {
    #[arg(long, default_value = "uniform", value_parser = parse_model)]
    model: ModelArg,
    #[arg(long, default_value_t = 1000)]
    draws: usize,
    #[arg(long, default_value_t = Z_ITERATIONS)]
    iterations: usize,
    #[arg(long, value_enum, default_value_t = ZMethod::FixedPoint)]
    method: ZMethod,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum BudgetArg {
    Fast,
    Full,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(value_enum)]
    budget: BudgetArg,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    /// Comma-separated criterion numbers (default: all).
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<u8>>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value = "uniform", value_parser = parse_model)]
    model: ModelArg,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long)]
    seed: u64,
    /// Digits printed per datum.
    #[arg(long, default_value_t = 16)]
    digits: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Errors caused by the arguments rather than by the run.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

enum Outcome {
    Ok,
    ChecksFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    use radix_select_core::Error as E;
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<E>() {
        Some(
            E::Dimension { .. }
            | E::AlphabetSize(_)
            | E::NotAProbability { .. }
            | E::NotNormalized { .. }
            | E::AbsorbingTransition { .. }
            | E::RankOutOfRange { .. }
            | E::NotBinary(_)
            | E::InvalidParameter(_)
            | E::ModelDocument(_),
        ) => 2,
        _ => 3,
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Theory(t) => theory(t),
        Command::Simulate(s) => simulate(s),
        Command::Validate(v) => validate(v),
        Command::Gen(g) => generate(g),
    }
}

fn theory(args: TheoryArgs) -> Result<Outcome> {
    let (command, config, text, values) = match args.command {
        Theory::CovUniform { s, t, b } => {
            check_unit(&[s, t])?;
            check_alphabet(b)?;
            let c = cov_uniform(s, t, b);
            (
                "cov-uniform",
                json!({ "s": s, "t": t, "b": b }),
                fmt_sig(c),
                json!(c),
            )
        }
        Theory::CovAsyb { s, t, p, tol } => {
            check_unit(&[s, t])?;
            if !(p > 0.0 && p < 1.0) || tol.is_nan() || tol <= 0.0 {
                return Err(Usage("need 0 < p < 1 and tol > 0".into()).into());
            }
            let c = cov_asyb(s, t, p, tol);
            (
                "cov-asyb",
                json!({ "s": s, "t": t, "p": p, "tol": tol }),
                fmt_sig(c),
                json!(c),
            )
        }
        Theory::Mean { model, t, tol } => {
            check_unit(&t)?;
            let centering = Centering::for_model(&model.model, tol)?;
            let m: Vec<f64> = t.iter().map(|&x| centering.at(x)).collect();
            let text = t
                .iter()
                .zip(&m)
                .map(|(x, y)| format!("{} {}", fmt_sig(*x), fmt_sig(*y)))
                .collect::<Vec<_>>()
                .join("\n");
            let config =
                json!({ "model_spec": model.spec, "model": model.model, "t": t, "tol": tol });
            ("mean", config, text, json!({ "t": t, "mean": m }))
        }
        Theory::Kappa { model } => {
            let k = kappa_mu(&model.model)?;
            let text = format!(
                "kappa0 {}\nkappa1 {}\nkappa_mu {}",
                fmt_sig(k.kappa0),
                fmt_sig(k.kappa1),
                fmt_sig(k.kappa_mu)
            );
            let values = json!({ "kappa0": k.kappa0, "kappa1": k.kappa1, "kappa_mu": k.kappa_mu });
            (
                "kappa",
                json!({ "model_spec": model.spec, "model": model.model }),
                text,
                values,
            )
        }
        Theory::Lcp { s, t, b, cap } => {
            check_unit(&[s, t])?;
            check_alphabet(b)?;
            let j = lcp(s, t, b, cap);
            let value = j.finite().map_or_else(|| json!("inf"), |j| json!(j));
            (
                "lcp",
                json!({ "s": s, "t": t, "b": b, "cap": cap }),
                j.to_string(),
                value,
            )
        }
    };
    match args.format {
        TheoryFormat::Text => println!("{text}"),
        TheoryFormat::Json => {
            let meta = metadata(&format!("theory {command}"), config);
            print!("{}", pretty(&json!({ "meta": meta, "value": values })));
        }
    }
    Ok(Outcome::Ok)
}

fn check_alphabet(b: usize) -> Result<()> {
    if (2..=256).contains(&b) {
        Ok(())
    } else {
        Err(Usage(format!("b = {b} is outside 2..=256")).into())
    }
}

fn check_unit(xs: &[f64]) -> Result<()> {
    match xs.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        Some(x) => Err(Usage(format!("{x} is outside [0, 1]")).into()),
        None => Ok(()),
    }
}

fn simulate(cmd: Simulate) -> Result<Outcome> {
    match cmd {
        Simulate::Process(a) => experiment("process", a, radix_select_core::quantile_experiment),
        Simulate::GrandAverage(a) => experiment(
            "grand-average",
            a,
            radix_select_core::grand_average_experiment,
        ),
        Simulate::WorstCase(a) => {
            experiment("worst-case", a, radix_select_core::worst_case_experiment)
        }
        Simulate::LimitG(a) => limit_g(a),
        Simulate::LimitGAsyb(a) => limit_g_asyb(a),
        Simulate::LimitZ(a) => limit_z(a),
    }
}

fn run_config(a: &RunArgs) -> Result<RunConfig> {
    let mut cfg = RunConfig::new(a.model.model.clone(), a.n, a.reps, a.output.seed)?;
    cfg.threads = a.output.threads;
    cfg.mean_tol = a.tol;
    cfg.depth_cap = a.depth_cap;
    cfg.tree_depth = a.tree_depth;
    cfg.asyb_grid_depth = a.asyb_grid_depth;
    cfg.limit_draws = a.limit_draws;
    cfg.jitter = a.jitter;
    cfg.quadrature_points = a.quadrature_points;
    cfg.grid = match (&a.grid, a.grid_depth) {
        (Some(grid), _) => grid.clone(),
        (None, depth) => grid_of_depth(&cfg.model, depth.unwrap_or(3), a.tol)?,
    };
    if let Some(path) = &a.tolerances {
        let text = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
        cfg.tolerances = serde_json::from_str::<Tolerances>(&text)
            .map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    }
    if let Some(PrefixCap(k)) = a.cov_max_prefix {
        cfg.tolerances.cov_max_prefix = k;
    }
    if a.tol <= 0.0 || a.depth_cap == 0 {
        return Err(Usage("--tol must be positive and --depth-cap at least 1".into()).into());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn experiment(
    name: &str,
    a: RunArgs,
    f: fn(&RunConfig) -> radix_select_core::Result<EstimatorSummary>,
) -> Result<Outcome> {
    let cfg = run_config(&a)?;
    let meta = metadata(
        &format!("simulate {name}"),
        json!({ "model_spec": a.model.spec, "threads": a.output.threads, "run": cfg }),
    );
    let summary = f(&cfg)?;
    let text = match a.output.format {
        Format::Csv => format!("{}{}", meta_line(&meta), summary.to_csv()),
        Format::Json => pretty(&json!({ "meta": meta, "summary": summary })),
    };
    emit(a.output.out.as_ref(), &text)?;
    for row in summary.failures() {
        eprintln!(
            "check failed: {} s={:?} t={:?} empirical={} theory={:?} tolerance={:?}",
            row.check_id, row.s, row.t, row.empirical, row.theory, row.tolerance
        );
    }
    Ok(if summary.passed() {
        Outcome::Ok
    } else {
        Outcome::ChecksFailed
    })
}

fn limit_g(a: LimitGArgs) -> Result<Outcome> {
    let paths = sampler_draws(a.output.seed, a.draws, a.output.threads, |rng| {
        sample_g_uniform(a.b, a.depth, rng)
    })?;
    let meta = metadata(
        "simulate limit-g",
        json!({ "b": a.b, "depth": a.depth, "draws": a.draws, "seed": a.output.seed, "threads": a.output.threads }),
    );
    emit(
        a.output.out.as_ref(),
        &render_paths(&meta, &paths, a.output.format),
    )?;
    Ok(Outcome::Ok)
}

fn limit_g_asyb(a: LimitGAsybArgs) -> Result<Outcome> {
    if a.grid_depth > 12 {
        return Err(Usage(
            "--grid-depth above 12 gives a covariance matrix too large to factor".into(),
        )
        .into());
    }
    let cells = 1usize << a.grid_depth;
    let grid: Vec<f64> = (0..=cells).map(|k| k as f64 / cells as f64).collect();
    let sampler = AsymBernoulliSampler::new(a.p, &grid, a.jitter)?;
    let paths = sampler_draws(a.output.seed, a.draws, a.output.threads, |rng| {
        Ok(sampler.sample(rng))
    })?;
    let meta = metadata(
        "simulate limit-g-asyb",
        json!({
            "p": a.p, "grid_depth": a.grid_depth, "draws": a.draws, "jitter": a.jitter,
            "jitter_used": sampler.jitter, "seed": a.output.seed, "threads": a.output.threads,
        }),
    );
    emit(
        a.output.out.as_ref(),
        &render_paths(&meta, &paths, a.output.format),
    )?;
    Ok(Outcome::Ok)
}

fn render_paths(meta: &Value, paths: &[GridProcess], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = meta_line(meta);
            out.push_str("draw,t,value\n");
            for (k, path) in paths.iter().enumerate() {
                for (t, v) in path.grid().iter().zip(path.values()) {
                    out.push_str(&format!("{k},{},{}\n", fmt_sig(*t), fmt_sig(*v)));
                }
            }
            out
        }
        Format::Json => {
            let draws: Vec<Value> = paths
                .iter()
                .map(|p| json!({ "grid": p.grid(), "values": p.values(), "sup": p.sup() }))
                .collect();
            pretty(&json!({ "meta": meta, "draws": draws }))
        }
    }
}

fn limit_z(a: LimitZArgs) -> Result<Outcome> {
    let model = &a.model.model;
    let meta = metadata(
        "simulate limit-z",
        json!({
            "model_spec": a.model.spec, "model": model, "draws": a.draws, "iterations": a.iterations,
            "method": format!("{:?}", a.method), "tol": a.tol, "seed": a.output.seed,
            "threads": a.output.threads,
        }),
    );
    let text = match a.method {
        ZMethod::FixedPoint => {
            let draws = sampler_draws(a.output.seed, a.draws, a.output.threads, |rng| {
                sample_z_mu(model, a.iterations, rng)
            })?;
            match a.output.format {
                Format::Csv => {
                    let mut out = meta_line(&meta);
                    out.push_str("draw,z0,z1,z_mu\n");
                    for (k, z) in draws.iter().enumerate() {
                        let z_mu = z.z_mu.map(fmt_sig).unwrap_or_default();
                        out.push_str(&format!("{k},{},{},{z_mu}\n", fmt_sig(z.z0), fmt_sig(z.z1)));
                    }
                    out
                }
                Format::Json => {
                    let rows: Vec<Value> = draws
                        .iter()
                        .map(|z| json!({ "z0": z.z0, "z1": z.z1, "z_mu": z.z_mu }))
                        .collect();
                    pretty(&json!({ "meta": meta, "draws": rows }))
                }
            }
        }
        ZMethod::Quantile => {
            let draws = sampler_draws(a.output.seed, a.draws, a.output.threads, |rng| {
                sample_z_mu_quantile(model, rng, a.tol)
            })?;
            match a.output.format {
                Format::Csv => {
                    let mut out = meta_line(&meta);
                    out.push_str("draw,z_mu\n");
                    for (k, z) in draws.iter().enumerate() {
                        out.push_str(&format!("{k},{}\n", fmt_sig(*z)));
                    }
                    out
                }
                Format::Json => pretty(&json!({ "meta": meta, "draws": draws })),
            }
        }
    };
    emit(a.output.out.as_ref(), &text)?;
    Ok(Outcome::Ok)
}

fn validate(a: ValidateArgs) -> Result<Outcome> {
    let budget = match a.budget {
        BudgetArg::Fast => Budget::Fast,
        BudgetArg::Full => Budget::Full,
    };
    let ids = a.only.clone().unwrap_or_else(|| (1..=10).collect());
    if let Some(bad) = ids.iter().find(|id| !(1..=10).contains(*id)) {
        return Err(Usage(format!("no criterion {bad}")).into());
    }
    let results = run_selected(budget, a.seed, a.threads, &ids);
    let failed = results.iter().filter(|r| !r.pass).count();
    let meta = metadata(
        "validate",
        json!({ "budget": budget, "seed": a.seed, "threads": a.threads, "criteria": ids }),
    );
    let text = match a.format {
        ReportFormat::Text => {
            let mut out = meta_line(&meta);
            out.extend(results.iter().map(|r| r.line() + "\n"));
            out.push_str(&format!(
                "{} of {} criteria passed\n",
                results.len() - failed,
                results.len()
            ));
            out
        }
        ReportFormat::Csv => validation_csv(&meta, &results),
        ReportFormat::Json => pretty(&json!({ "meta": meta, "criteria": results })),
    };
    emit(a.out.as_ref(), &text)?;
    if a.out.is_some() {
        for r in &results {
            eprintln!("{}", r.line());
        }
    }
    Ok(if failed == 0 {
        Outcome::Ok
    } else {
        Outcome::ChecksFailed
    })
}

fn validation_csv(meta: &Value, results: &[CriterionResult]) -> String {
    let mut out = meta_line(meta);
    out.push_str("criterion,");
    out.push_str(radix_select_core::experiments::CSV_HEADER);
    out.push('\n');
    for r in results {
        for row in &r.rows {
            out.push_str(&format!(
                "{},{}\n",
                r.id,
                radix_select_core::experiments::csv_line(row)
            ));
        }
    }
    out
}

fn generate(a: GenArgs) -> Result<Outcome> {
    let model = &a.model.model;
    let b = model.b();
    let mut data = gen_dataset(model, a.n, a.seed);
    let prefixes = (0..a.n)
        .map(|i| data.prefix(i, a.digits))
        .collect::<radix_select_core::Result<Vec<_>>>()?;
    let meta = metadata(
        "gen",
        json!({ "model_spec": a.model.spec, "model": model, "n": a.n, "seed": a.seed, "digits": a.digits }),
    );
    let text = match a.format {
        Format::Csv => {
            let mut out = meta_line(&meta);
            out.push_str("index,digits,value\n");
            for (i, d) in prefixes.iter().enumerate() {
                out.push_str(&format!(
                    "{i},{},{}\n",
                    digit_string(d, b),
                    fmt_sig(value_of_prefix(d, b))
                ));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = prefixes
                .iter()
                .map(|d| json!({ "digits": d, "value": value_of_prefix(d, b) }))
                .collect();
            pretty(&json!({ "meta": meta, "data": rows }))
        }
    };
    emit(a.out.as_ref(), &text)?;
    Ok(Outcome::Ok)
}

/// Digits as one character each for `b <= 10`, dot-separated otherwise.
fn digit_string(digits: &[u8], b: usize) -> String {
    if b <= 10 {
        digits.iter().map(|d| char::from(b'0' + d)).collect()
    } else {
        digits
            .iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Run metadata: the command, the raw invocation and the resolved config.
fn metadata(command: &str, config: Value) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "invocation": std::env::args().collect::<Vec<_>>(),
        "config": config,
    })
}

fn meta_line(meta: &Value) -> String {
    format!("# {meta}\n")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}
