use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hweno_core::limiter::modified_derivative;
use hweno_core::reconstruct::reconstruct_plus;
use hweno_core::weno::weno5_reconstruct;

const GAMMA: [f64; 3] = [0.98, 0.01, 0.01];
const D: [f64; 3] = [0.98, 0.01, 0.01];

fn kernels(c: &mut Criterion) {
    let dx = 0.05;
    c.bench_function("hweno_reconstruct_plus", |b| {
        b.iter(|| reconstruct_plus(black_box([0.3, 0.5, 0.4]), black_box([1.1, 0.2, -0.9]), dx, &GAMMA, 1e-6))
    });
    c.bench_function("weno5_reconstruct", |b| b.iter(|| weno5_reconstruct(black_box(&[0.1, 0.3, 0.5, 0.4, 0.2]))));
    c.bench_function("limiter_modified_derivative", |b| {
        b.iter(|| modified_derivative(black_box([0.3, 0.5, 0.4]), black_box([1.1, 0.2, -0.9]), dx, &D, 1e-6))
    });
}

criterion_group!(benches, kernels);
criterion_main!(benches);
