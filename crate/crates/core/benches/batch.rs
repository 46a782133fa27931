use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use avoidance::batch::{map_cases, Parallelism};
use avoidance::rng::{random_covering_hypergraph, rng_from_seed, split_seed};
use avoidance::solver::{solve_ae, SolveOptions};
use avoidance::verify::{run_suite, Suite, VerifyConfig};
use avoidance::Hypergraph;

fn boards(count: usize) -> Vec<Hypergraph> {
    (0..count)
        .map(|i| {
            let mut rng = rng_from_seed(split_seed(1, i as u64));
            random_covering_hypergraph(&mut rng, 12, 8, 3..=5)
        })
        .collect()
}

fn solve_batch(c: &mut Criterion) {
    let boards = boards(32);
    let opts = SolveOptions::default();
    let mut group = c.benchmark_group("solve_ae_batch");
    group.sample_size(10);
    for mode in [Parallelism::Sequential, Parallelism::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| {
                map_cases(boards.len(), mode, |i| {
                    solve_ae(black_box(&boards[i]), &opts).map(|r| r.outcome).ok()
                })
            })
        });
    }
    group.finish();
}

fn suite_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("uniformize_suite");
    group.sample_size(10);
    for mode in [Parallelism::Sequential, Parallelism::Parallel] {
        let cfg = VerifyConfig {
            parallelism: mode,
            ..VerifyConfig::default()
        };
        group.bench_function(format!("{mode:?}"), |b| b.iter(|| run_suite(Suite::Uniformize, black_box(&cfg))));
    }
    group.finish();
}

criterion_group!(benches, solve_batch, suite_batch);
criterion_main!(benches);
