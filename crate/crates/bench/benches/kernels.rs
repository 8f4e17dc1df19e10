use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use p1omega::cohomology::{h1_finite, h1_zr};
use p1omega::descent::orbit_fiber_report;
use p1omega::forms::{config_to_form, discriminant, enumerate_omega_forms, gauss_reduce_quadratic, roots_config};
use p1omega::sarith::factorize;
use p1omega::SPrimeSet;
use p1omega_bench::{dihedral_by_reflection, rotation_lattice, s23, sample_config, sample_forms};

fn forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("discriminant");
    for f in sample_forms() {
        group.bench_with_input(BenchmarkId::from_parameter(f.degree()), &f, |b, f| b.iter(|| discriminant(f)));
    }
    group.finish();

    let a = sample_config();
    let f = config_to_form(&a);
    c.bench_function("config_to_form/6", |b| b.iter(|| config_to_form(black_box(&a))));
    c.bench_function("roots_config/6", |b| b.iter(|| roots_config(black_box(&f))));

    let q = p1omega::BinaryForm::from_i64(&[1003, 2410, 1448]).unwrap();
    c.bench_function("gauss_reduce", |b| b.iter(|| gauss_reduce_quadratic(black_box(&q))));

    let n = "-987654321987654".parse().unwrap();
    c.bench_function("factorize/15 digits", |b| b.iter(|| factorize(black_box(&n))));
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    group.bench_function("n=2 S={} h=40", |b| b.iter(|| enumerate_omega_forms(2, &SPrimeSet::empty(), 40)));
    group.bench_function("n=3 S={2,3} h=6", |b| b.iter(|| enumerate_omega_forms(3, &s23(), 6)));
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let d4 = dihedral_by_reflection();
    c.bench_function("h1_finite/D4", |b| b.iter(|| h1_finite(black_box(&d4))));
    let lattice = rotation_lattice();
    c.bench_function("h1_zr/Z3 on Z^2", |b| b.iter(|| h1_zr(black_box(&lattice))));
}

fn descent(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_fiber_report");
    group.sample_size(10);
    for n in [2, 3, 4] {
        group.bench_with_input(BenchmarkId::new("q=2 k=2", n), &n, |b, &n| b.iter(|| orbit_fiber_report(n, 2, 2)));
    }
    group.bench_function("q=3 k=2 n=3", |b| b.iter(|| orbit_fiber_report(3, 3, 2)));
    group.finish();
}

criterion_group!(benches, forms, enumeration, cohomology, descent);
criterion_main!(benches);
