use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use landau_bench::{decay, mixed_metric, small_metric, unit_field};
use landau_core::asymptotics::{f_series, g_series};
use landau_core::galerkin::{assemble_full, Sign, TruncationSpec};
use landau_core::special::{log_j_integral, log_lower_incomplete};
use landau_core::toeplitz::{gauged_element, quadratic_form_section, toeplitz_eigs_radial};

fn matrix_elements(c: &mut Criterion) {
    let ctx = unit_field();
    let v = decay(0.7, 1.5);
    let mut g = c.benchmark_group("gauged_element");
    for k in [10usize, 100, 1000] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |bch, &k| {
            bch.iter(|| gauged_element(&ctx, &v, 2, 1, black_box(k), k - 1).unwrap())
        });
    }
    g.finish();
}

fn quadrature(c: &mut Criterion) {
    c.bench_function("log_j_integral beta=0.5 k=4096", |b| {
        b.iter(|| log_j_integral(0.5, 0.5, black_box(4096.0)).unwrap())
    });
    c.bench_function("log_lower_incomplete k=500", |b| {
        b.iter(|| log_lower_incomplete(black_box(500.0), 2.0).unwrap())
    });
}

fn sections(c: &mut Criterion) {
    let ctx = unit_field();
    let v = decay(0.5, 1.0);
    c.bench_function("toeplitz_eigs_radial K=200", |b| {
        b.iter(|| toeplitz_eigs_radial(&ctx, &v, 0, black_box(200)).unwrap())
    });
    let m = mixed_metric();
    c.bench_function("quadratic_form_section q=1 K=100", |b| {
        b.iter(|| quadratic_form_section(&ctx, &m, 1, black_box(100)).unwrap())
    });
}

fn series(c: &mut Criterion) {
    c.bench_function("f_series beta=0.9 order=9", |b| {
        b.iter(|| f_series(black_box(0.9), 1.0, 9).unwrap())
    });
    c.bench_function("g_series beta=1.1 order=10", |b| {
        b.iter(|| g_series(black_box(1.1), 1.0, 10).unwrap())
    });
}

fn galerkin(c: &mut Criterion) {
    let ctx = unit_field();
    let m = small_metric();
    let spec = TruncationSpec::new(1, 4, 40).unwrap();
    let mut g = c.benchmark_group("galerkin");
    g.sample_size(10);
    g.bench_function("assemble q=1 Q=4 K=40", |b| {
        b.iter(|| assemble_full(&ctx, &m, black_box(&spec), Sign::Plus).unwrap())
    });
    g.finish();
}

criterion_group!(benches, matrix_elements, quadrature, sections, series, galerkin);
criterion_main!(benches);
