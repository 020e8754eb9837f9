use criterion::{criterion_group, criterion_main, Criterion};
use paraclass_core::classify::{classify, phi_symmetry_check};
use paraclass_core::models::{model_general, model_k_greater};
use paraclass_core::{Analysis, Exact, Scalar};
use std::hint::black_box;

fn bench_pipeline(c: &mut Criterion) {
    let exact = model_general(
        Exact::from_ratio(-5, 3),
        Exact::from_ratio(7, 2),
        Exact::from_ratio(3, 4),
    );
    c.bench_function("analysis/exact/general", |b| {
        b.iter(|| Analysis::new(black_box(exact.clone())).unwrap())
    });
    let float = model_general(-5.0 / 3.0, 3.5, 0.75);
    c.bench_function("analysis/float/general", |b| {
        b.iter(|| Analysis::new(black_box(float.clone())).unwrap())
    });

    let kg = Analysis::new(model_k_greater(Exact::from_int(3), 1)).unwrap();
    c.bench_function("classify/exact/k_greater", |b| {
        b.iter(|| classify(black_box(&kg)).unwrap())
    });
    c.bench_function("phi_symmetry/exact/k_greater", |b| {
        b.iter(|| phi_symmetry_check(black_box(&kg)).unwrap())
    });
}

criterion_group!(benches, bench_pipeline);
criterion_main!(benches);
