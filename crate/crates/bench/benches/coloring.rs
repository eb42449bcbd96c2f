use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hzcolor::descent::{kempe_descent, DescentConfig};
use hzcolor::*;

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

fn vizing(c: &mut Criterion) {
    let mut group = c.benchmark_group("vizing");
    for n in [16, 32, 64] {
        let g = random_graph(n, 0.3, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| color_delta_plus_one(g))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(20);
    let search = OracleConfig {
        density_bound: false,
        ..Default::default()
    };
    for (name, g) in [
        ("petersen", named::petersen()),
        ("pstar", named::petersen_minus_vertex()),
        ("k6", named::complete(6)),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| chromatic_index_exact(&g, &search).unwrap())
        });
    }
    group.finish();
}

fn optimal(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimal");
    group.sample_size(20);
    for p in OdeltaParams::all_up_to(8) {
        let g = gen_odelta(&p).unwrap();
        let h = g.without_edge(0);
        let start = color_delta_plus_one(&h).coloring;
        group.bench_function(
            format!("descent_odelta_{}_{}_minus_edge", p.delta, p.n1),
            |b| b.iter(|| kempe_descent(&h, &start, &DescentConfig::default())),
        );
    }
    group.bench_function("classify_pstar", |b| {
        b.iter(|| {
            color_optimal(&named::petersen_minus_vertex(), &ClassifyOptions::default()).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, vizing, oracle, optimal);
criterion_main!(benches);
