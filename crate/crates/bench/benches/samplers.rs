use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use deltap_bench::{corpus_scale_params, small_params};
use deltap_core::{sample_direct, sample_mcmc};

fn bench_direct(c: &mut Criterion) {
    let mut group = c.benchmark_group("direct_sampler");
    for (name, params) in [("small", small_params()), ("corpus", corpus_scale_params())] {
        for draws in [10_000usize, 40_000] {
            group.throughput(Throughput::Elements(draws as u64));
            group.bench_with_input(
                BenchmarkId::new(name, draws),
                &draws,
                |b, &draws| {
                    b.iter(|| black_box(sample_direct(&params, draws, 42).unwrap()));
                },
            );
        }
    }
    group.finish();
}

fn bench_mcmc(c: &mut Criterion) {
    let mut group = c.benchmark_group("mcmc_sampler");
    group.sample_size(10);
    for (name, params) in [("small", small_params()), ("corpus", corpus_scale_params())] {
        let (chains, steps, burn_in) = (4, 10_000, 1_000);
        group.throughput(Throughput::Elements((chains * steps) as u64));
        group.bench_function(BenchmarkId::new(name, chains * steps), |b| {
            b.iter(|| black_box(sample_mcmc(&params, chains, steps, burn_in, 42).unwrap()));
        });
    }
    group.finish();
}

criterion_group!(benches, bench_direct, bench_mcmc);
criterion_main!(benches);
