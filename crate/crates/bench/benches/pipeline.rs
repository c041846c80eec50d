use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use specrewriter_bench::{cycle4, original, RELATION_SPEC};
use specrewriter_core::essence::parse_spec;
use specrewriter_core::eval::solve;
use specrewriter_core::rules::reformulate;

fn pipeline(c: &mut Criterion) {
    let spec = original();
    let rewritten = reformulate(&spec).unwrap().rewritten;
    let inst = cycle4();

    c.bench_function("parse", |b| b.iter(|| parse_spec(black_box(RELATION_SPEC)).unwrap()));
    c.bench_function("rewrite", |b| b.iter(|| reformulate(black_box(&spec)).unwrap()));
    c.bench_function("solve/original", |b| b.iter(|| solve(black_box(&spec), &inst, None).unwrap()));
    c.bench_function("solve/rewritten", |b| b.iter(|| solve(black_box(&rewritten), &inst, None).unwrap()));
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
