use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use nub_core::par::{self, Execution};
use nub_core::{bases, qrac, search, unbiasedness};

const MODES: [(&str, Execution); 2] = [
    ("parallel", Execution::Parallel),
    ("sequential", Execution::Sequential),
];

fn kernels(c: &mut Criterion) {
    let s = bases::random_basis_set(4, 6, 1).unwrap();
    let small = bases::random_basis_set(4, 3, 1).unwrap();

    let mut group = c.benchmark_group("asp_quantum_n4_d6");
    for (name, mode) in MODES {
        par::set_execution(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| qrac::asp_quantum(black_box(&s)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("nub_residual_n4_d6");
    for (name, mode) in MODES {
        par::set_execution(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| unbiasedness::nub_residual(black_box(&s)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("char_poly_coeffs_n4_d3");
    for (name, mode) in MODES {
        par::set_execution(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| unbiasedness::char_poly_coeffs(black_box(&small)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("haar_expectation_n3_d4_2000");
    group.sample_size(20);
    for (name, mode) in MODES {
        par::set_execution(mode);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| search::haar_expectation_test(3, 4, black_box(2000), 7).unwrap())
        });
    }
    group.finish();
    par::set_execution(Execution::Parallel);
}

criterion_group!(benches, kernels);
criterion_main!(benches);
