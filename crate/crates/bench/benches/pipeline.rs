use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use deltap_bench::synthetic_matrix;
use deltap_core::{
    analyze_all_pairs, contingency, summarize, AnalysisConfig, Orientation, sample_direct,
    posterior_params, DirichletParams,
};

fn bench_contingency(c: &mut Criterion) {
    let matrix = synthetic_matrix(10, 10_000, 7);
    c.bench_function("contingency_10k_rows", |b| {
        b.iter(|| black_box(contingency(&matrix, "v00", "v01").unwrap()));
    });
}

fn bench_summarize(c: &mut Criterion) {
    let params = DirichletParams::new(4275.0, 113.0, 206.0, 23.0).unwrap();
    let samples = sample_direct(&params, 40_000, 3).unwrap();
    c.bench_function("summarize_40k_draws", |b| {
        b.iter(|| black_box(summarize(&samples, Orientation::Ab, 0.95, 1_000).unwrap()));
    });
    let table = deltap_core::ContingencyTable::new("a", "b", 4274, 112, 205, 22);
    c.bench_function("posterior_params", |b| {
        b.iter(|| black_box(posterior_params(&table, &DirichletParams::flat()).unwrap()));
    });
}

fn bench_all_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze_all_pairs");
    group.sample_size(10);
    for vars in [10usize, 20] {
        let matrix = synthetic_matrix(vars, 2_000, 11);
        let config = AnalysisConfig {
            draws: 10_000,
            ..AnalysisConfig::default()
        };
        let pairs = vars * (vars - 1) / 2;
        group.throughput(Throughput::Elements(pairs as u64));
        group.bench_function(BenchmarkId::from_parameter(vars), |b| {
            b.iter(|| black_box(analyze_all_pairs(&matrix, &config).unwrap()));
        });
    }
    group.finish();
}

criterion_group!(benches, bench_contingency, bench_summarize, bench_all_pairs);
criterion_main!(benches);
