use std::hint::black_box;

use chordkit_bench::{random, star};
use chordkit_core::relation::{build_bipartite, random_walk};
use chordkit_core::{count_clique_trees, enumerate_clique_trees, ChordalGraph, Side};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn recognition(c: &mut Criterion) {
    let mut group = c.benchmark_group("chordal_graph_new");
    for n in [50, 200, 1000] {
        let g = random(n, 1).graph().clone();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| ChordalGraph::new(black_box(g.clone())).unwrap())
        });
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    let cg = random(1000, 2);
    c.bench_function("count_clique_trees/1000", |b| {
        b.iter(|| count_clique_trees(black_box(&cg)))
    });
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_clique_trees/star");
    for leaves in [4, 6] {
        let cg = star(leaves);
        group.bench_with_input(BenchmarkId::from_parameter(leaves), &cg, |b, cg| {
            b.iter(|| enumerate_clique_trees(cg).unwrap())
        });
    }
    group.finish();
}

fn relation(c: &mut Criterion) {
    let cg = star(5);
    c.bench_function("build_bipartite/star5", |b| {
        b.iter(|| build_bipartite(&cg).unwrap())
    });
    let cg = star(3);
    c.bench_function("random_walk/star3/10000", |b| {
        b.iter(|| random_walk(&cg, Side::Tree, 10_000, black_box(42)))
    });
}

criterion_group!(benches, recognition, counting, enumeration, relation);
criterion_main!(benches);
