use std::hint::black_box;

use binmat::generator::{enumerate_minor_free, EnumerateOptions, Excluded};
use binmat::{canonize, catalog, MinorOracle};
use criterion::{criterion_group, criterion_main, Criterion};

fn kernels(c: &mut Criterion) {
    let m36 = catalog::matroid("M36").unwrap();
    let points = m36.points().unwrap();
    c.bench_function("canonize M36", |b| b.iter(|| canonize(black_box(&points), 5).unwrap()));

    let s5 = catalog::matroid("S5").unwrap();
    c.bench_function("internally 4-connected S5", |b| b.iter(|| black_box(&s5).is_internally_4connected()));

    let prism = catalog::prism();
    let cat = catalog::matroid("CAT").unwrap();
    c.bench_function("prism minor test CAT", |b| {
        b.iter(|| MinorOracle::new(&prism).unwrap().without_memo().check(black_box(&cat)))
    });

    let mut group = c.benchmark_group("orderly");
    group.sample_size(10);
    group.bench_function("rank 4 census", |b| {
        b.iter(|| enumerate_minor_free(&EnumerateOptions::new(4, Excluded::none()), None, &mut |_| {}).unwrap())
    });
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
