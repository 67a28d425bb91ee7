use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use radix_select_core::seeding::{stream_rng, Domain};
use radix_select_core::{
    cov_asyb, mean_markov, sample_g_uniform, sample_z_mu, AsymBernoulliSampler, MarkovMean,
    MarkovModel,
};

fn bench_mean(c: &mut Criterion) {
    let model = MarkovModel::binary(0.5, 0.3, 0.6).unwrap();
    c.bench_function("mean_markov/build", |b| {
        b.iter(|| MarkovMean::new(black_box(&model), 1e-9).unwrap())
    });
    let mean = MarkovMean::new(&model, 1e-9).unwrap();
    c.bench_function("mean_markov/eval", |b| {
        b.iter(|| mean.eval(black_box(0.377)))
    });
    c.bench_function("mean_markov/one_shot", |b| {
        b.iter(|| mean_markov(black_box(0.377), &model, 1e-9).unwrap())
    });
    c.bench_function("cov_asyb", |b| {
        b.iter(|| cov_asyb(black_box(0.31), black_box(0.62), 0.7, 1e-12))
    });
}

fn bench_samplers(c: &mut Criterion) {
    let mut rng = stream_rng(1, Domain::Sampler, 0);
    c.bench_function("sample_g_uniform/K=10", |b| {
        b.iter(|| sample_g_uniform(2, 10, &mut rng).unwrap())
    });
    let grid: Vec<f64> = (0..=256).map(|k| k as f64 / 256.0).collect();
    let sampler = AsymBernoulliSampler::new(0.7, &grid, 1e-10).unwrap();
    c.bench_function("sample_g_asyb/257", |b| b.iter(|| sampler.sample(&mut rng)));
    let model = MarkovModel::binary(0.5, 0.3, 0.6).unwrap();
    c.bench_function("sample_z_mu/64", |b| {
        b.iter(|| sample_z_mu(&model, 64, &mut rng).unwrap())
    });
}

criterion_group!(benches, bench_mean, bench_samplers);
criterion_main!(benches);
