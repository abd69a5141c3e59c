use std::hint::black_box;

use blackswan_bench::black_swan_theory;
use blackswan_core::kernel::corpus::GOLDEN;
use blackswan_core::kernel::{check_proof, parse_script, print_script};
use blackswan_core::mutate::mutants;
use criterion::{criterion_group, Criterion};

fn golden(c: &mut Criterion) {
    let theory = black_swan_theory();
    let script = GOLDEN.script();
    c.bench_function("parse golden proof", |b| {
        b.iter(|| parse_script(black_box(GOLDEN.text)))
    });
    c.bench_function("print golden proof", |b| {
        b.iter(|| print_script(black_box(&script)))
    });
    c.bench_function("check golden proof", |b| {
        b.iter(|| check_proof(black_box(&script), &theory))
    });
}

fn mutation(c: &mut Criterion) {
    let theory = black_swan_theory();
    let all = mutants(&GOLDEN.script(), 1, 25);
    c.bench_function("reject 100 mutants", |b| {
        b.iter(|| {
            all.iter()
                .filter(|m| check_proof(&m.script, &theory).is_ok_and(|r| r.accepted()))
                .count()
        })
    });
}

criterion_group!(benches, golden, mutation);
