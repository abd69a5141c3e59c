use blackswan_bench::{all_imaginable_problem, black_swan_problem};
use blackswan_core::decision::{check_completeness, search_maps, Bounds, Property};
use criterion::{criterion_group, Criterion};

fn completeness(c: &mut Criterion) {
    let swans = black_swan_problem();
    let calm = all_imaginable_problem();
    let bounds = Bounds::default();
    c.bench_function("completeness, black swans", |b| {
        b.iter(|| check_completeness(&swans.phi, &swans.universe, &bounds, Property::Occurring))
    });
    c.bench_function("completeness, all imaginable", |b| {
        b.iter(|| check_completeness(&calm.phi, &calm.universe, &bounds, Property::Complete))
    });
}

fn search(c: &mut Criterion) {
    let swans = black_swan_problem();
    let calm = all_imaginable_problem();
    let bounds = Bounds::default();
    let mut group = c.benchmark_group("map search");
    group.sample_size(10);
    group.bench_function("black swans", |b| {
        b.iter(|| search_maps(&swans.universe, &bounds, Property::Occurring))
    });
    group.bench_function("all imaginable", |b| {
        b.iter(|| search_maps(&calm.universe, &bounds, Property::Complete))
    });
    group.finish();
}

criterion_group!(benches, completeness, search);
