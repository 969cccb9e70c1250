use std::hint::black_box;

use bazaikin::{elementary_symmetric, enumerate_classes, invariants, FiveTuple};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_classes");
    group.sample_size(10);
    for p1_max in [500, 2000] {
        group.bench_with_input(BenchmarkId::from_parameter(p1_max), &p1_max, |b, &p| {
            b.iter(|| enumerate_classes(black_box(p), Some(1)).unwrap())
        });
    }
    group.finish();
}

fn symmetric(c: &mut Criterion) {
    let q = FiveTuple::new([7, 1, 1, -3, -3]).unwrap();
    let r = q.extend();
    c.bench_function("elementary_symmetric/4", |b| {
        b.iter(|| elementary_symmetric(4, black_box(&r)).unwrap())
    });
    c.bench_function("invariants", |b| {
        b.iter(|| invariants(black_box(&q)).unwrap())
    });
}

criterion_group!(benches, census, symmetric);
criterion_main!(benches);
