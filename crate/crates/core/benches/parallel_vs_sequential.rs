//! Criterion comparison of the data-parallel paths against their sequential
//! twins. Build with `--no-default-features` to measure the fallback build's
//! default path as well; in a default build the `*_seq` entry points are the
//! sequential baseline.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use potalg::oracle::{
    batch_oracle_spectra, batch_oracle_spectra_seq, lowest_eigenvalues, lowest_eigenvalues_seq,
    to_sturm,
};
use potalg::verify::{max_shape_invariance_residual, max_shape_invariance_residual_seq};

fn bench_eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("lowest_eigenvalues");
    for &n in &[1024usize, 4096] {
        let t = to_sturm(2.0, 1.0, n).expect("valid grid");
        group.bench_with_input(BenchmarkId::new("parallel", n), &t, |b, t| {
            b.iter(|| lowest_eigenvalues(black_box(t), 8).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &t, |b, t| {
            b.iter(|| lowest_eigenvalues_seq(black_box(t), 8).unwrap())
        });
    }
    group.finish();
}

fn bench_batch_spectra(c: &mut Criterion) {
    let jobs: Vec<(f64, f64)> = [1.0, 1.5, 2.0, 3.0]
        .iter()
        .flat_map(|&g| [0.5, 1.0, 2.0].iter().map(move |&b| (g, b)))
        .collect();
    let mut group = c.benchmark_group("batch_oracle_spectra");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| batch_oracle_spectra(black_box(&jobs), 1024, 5).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| batch_oracle_spectra_seq(black_box(&jobs), 1024, 5).unwrap())
    });
    group.finish();
}

fn bench_residual_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("shape_invariance_sweep");
    group.bench_function("parallel", |b| {
        b.iter(|| max_shape_invariance_residual(black_box(2000), 42))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| max_shape_invariance_residual_seq(black_box(2000), 42))
    });
    group.finish();
}

criterion_group!(benches, bench_eigenvalues, bench_batch_spectra, bench_residual_sweep);
criterion_main!(benches);
