use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wsr_core::harness::{run_trials_parallel, run_trials_sequential, Mode, TrialConfig};
use wsr_core::{intersection_oracle, wsr2_basis, CharacteristicPair};

fn oracle_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_trials");
    group.sample_size(10);
    for trials in [32usize, 128] {
        let config = TrialConfig {
            trials,
            seed: 7,
            mode: Mode::OracleOnly,
            ..TrialConfig::default()
        };
        group.bench_with_input(BenchmarkId::new("sequential", trials), &config, |b, cfg| {
            b.iter(|| run_trials_sequential(cfg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", trials), &config, |b, cfg| {
            b.iter(|| run_trials_parallel(cfg).unwrap())
        });
    }
    group.finish();
}

fn full_fuzz(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_fuzz");
    group.sample_size(10);
    let config = TrialConfig {
        trials: 64,
        seed: 3,
        ..TrialConfig::default()
    };
    group.bench_function("sequential", |b| b.iter(|| run_trials_sequential(&config).unwrap()));
    group.bench_function("parallel", |b| b.iter(|| run_trials_parallel(&config).unwrap()));
    group.finish();
}

fn single_pair(c: &mut Criterion) {
    let pair = CharacteristicPair::from_i64(&[(-2, 1), (1, -2), (2, 1), (1, 2)]);
    c.bench_function("closed_form_basis", |b| b.iter(|| wsr2_basis(&pair).lattice()));
    c.bench_function("fold_intersection", |b| b.iter(|| intersection_oracle(&pair)));
}

criterion_group!(benches, oracle_trials, full_fuzz, single_pair);
criterion_main!(benches);
