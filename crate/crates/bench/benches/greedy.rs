use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diverse_core::harness::degree_partition;
use diverse_core::{
    run_common_greedy, run_replimit_greedy, CommonGreedyConfig, Graph, RepLimitConfig, UniformMatroid,
    VertexCoverage,
};

/// Deterministic pseudo-random graph so runs compare across machines.
fn graph(n: usize, density_per_mille: u64) -> Graph {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state % 1000 < density_per_mille {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

fn bench_algorithms(c: &mut Criterion) {
    let g = graph(450, 180).complement();
    let f = VertexCoverage::new(&g);
    let uniform = UniformMatroid::new(450, 10);
    let partition = degree_partition(&g, 10, &[1; 10], false).expect("valid partition");
    let mut group = c.benchmark_group("common");
    for b in [0, 5, 9] {
        group.bench_with_input(BenchmarkId::new("U10", b), &b, |bench, &b| {
            bench.iter(|| run_common_greedy(&f, &uniform, CommonGreedyConfig { b, r: 20 }).unwrap())
        });
    }
    group.finish();
    let mut group = c.benchmark_group("replimit");
    for l in [1, 10, 20] {
        group.bench_with_input(BenchmarkId::new("U10", l), &l, |bench, &l| {
            bench.iter(|| run_replimit_greedy(&f, &uniform, RepLimitConfig { r: 20, l }).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("P10", l), &l, |bench, &l| {
            bench.iter(|| run_replimit_greedy(&f, &partition, RepLimitConfig { r: 20, l }).unwrap())
        });
    }
    group.finish();
    c.bench_function("coverage graph construction", |bench| {
        bench.iter(|| VertexCoverage::new(black_box(&g)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_algorithms
}
criterion_main!(benches);
