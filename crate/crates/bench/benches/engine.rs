use std::hint::black_box;

use cliquepf_core::{
    exact_partition_function, extract_dense_subset, g_derivatives, weights_from_graph, AlgorithmParams, AnchorSet,
    BigRational, EngineConfig, Graph,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(0.5)).collect();
    Graph::new(n, edges).unwrap()
}

fn derivatives(c: &mut Criterion) {
    let mut group = c.benchmark_group("g_derivatives");
    for &(n, m, l) in &[(12, 4, 3), (12, 4, 6), (16, 5, 4)] {
        let p = AlgorithmParams::standard(m).unwrap();
        let w = weights_from_graph(&random_graph(n, 1), &p).unwrap();
        let id = format!("n{n}_m{m}_l{l}");
        group.bench_with_input(BenchmarkId::new("float", &id), &w, |b, w| {
            b.iter(|| g_derivatives::<f64>(black_box(w), m, l, &AnchorSet::empty()).unwrap())
        });
        // exact arithmetic costs ~100x; keep it to the smaller instances
        if n <= 12 {
            group.bench_with_input(BenchmarkId::new("exact", &id), &w, |b, w| {
                b.iter(|| g_derivatives::<BigRational>(black_box(w), m, l, &AnchorSet::empty()).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    for &(n, m) in &[(10, 4), (14, 5)] {
        let p = AlgorithmParams::standard(m).unwrap();
        let w = weights_from_graph(&random_graph(n, 2), &p).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_m{m}")), &w, |b, w| {
            b.iter(|| exact_partition_function(black_box(w), m).unwrap())
        });
    }
    group.finish();
}

fn extraction(c: &mut Criterion) {
    let g = random_graph(12, 3);
    let p = AlgorithmParams::standard(3).unwrap();
    c.bench_function("extract/n12_m3_l8_float", |b| {
        b.iter(|| extract_dense_subset(black_box(&g), &p, 8, &EngineConfig::float()).unwrap())
    });
}

criterion_group!(benches, derivatives, oracle, extraction);
criterion_main!(benches);
