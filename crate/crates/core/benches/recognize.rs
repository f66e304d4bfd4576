use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pef::oracle::{Family, GeneratorSpec};
use pef::recognizer::{
    recognize, recognize_batch, recognize_batch_sequential, recognize_sequential,
};
use pef::Graph;

fn free_graph(atoms: usize, seed: u64) -> Graph {
    let family = Family::FreeGraph {
        atoms,
        max_ell: 15,
        max_bag: 5,
        max_universal: 3,
    };
    GeneratorSpec { family, seed }.generate()
}

fn single(c: &mut Criterion) {
    let mut group = c.benchmark_group("recognize");
    group.sample_size(20);
    for atoms in [10, 40, 95] {
        let g = free_graph(atoms, 7);
        let label = format!("n{}_m{}", g.n(), g.m());
        group.bench_with_input(BenchmarkId::new("parallel", &label), &g, |b, g| {
            b.iter(|| recognize(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", &label), &g, |b, g| {
            b.iter(|| recognize_sequential(black_box(g)))
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("recognize_batch");
    group.sample_size(20);
    let mixed: Vec<Graph> = (0..64)
        .map(|seed| {
            let family = if seed % 2 == 0 {
                Family::FreeGraph {
                    atoms: 6,
                    max_ell: 11,
                    max_bag: 4,
                    max_universal: 2,
                }
            } else {
                Family::NearMiss {
                    atoms: 6,
                    max_ell: 11,
                    max_bag: 4,
                    max_universal: 2,
                }
            };
            GeneratorSpec { family, seed }.generate()
        })
        .collect();
    group.bench_function("parallel", |b| {
        b.iter(|| recognize_batch(black_box(&mixed)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| recognize_batch_sequential(black_box(&mixed)))
    });
    group.finish();
}

criterion_group!(benches, single, batch);
criterion_main!(benches);
