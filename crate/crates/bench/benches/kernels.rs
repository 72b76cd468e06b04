use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qdr_core::cpn::cpn_structure_constants;
use qdr_core::poisson::{fixtures, quantum_d};
use qdr_core::quantum::quantum_wedge;
use qdr_core::sample;
use qdr_core::symplectic::{lefschetz_matrix, Parity};

fn wedge(c: &mut Criterion) {
    let mut g = c.benchmark_group("quantum_wedge");
    for n in [1usize, 2, 3] {
        let dim = 2 * n;
        let mut rng = sample::rng(1);
        let w = fixtures::standard_bivector(n);
        let a = sample::qform(&mut rng, dim, 6);
        let b = sample::qform(&mut rng, dim, 6);
        g.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bch, _| {
            bch.iter(|| quantum_wedge(black_box(&a), black_box(&b), &w).unwrap())
        });
    }
    g.finish();
}

fn dh(c: &mut Criterion) {
    let mut g = c.benchmark_group("quantum_d");
    for n in [1usize, 2] {
        let dim = 2 * n;
        let mut rng = sample::rng(2);
        let w = fixtures::standard_symplectic(n);
        let a = sample::poly_field_form(&mut rng, dim, 2, 6);
        g.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bch, _| {
            bch.iter(|| quantum_d(black_box(&a), &w).unwrap())
        });
    }
    g.finish();
}

fn lefschetz(c: &mut Criterion) {
    let mut g = c.benchmark_group("lefschetz");
    for n in [1usize, 2, 3] {
        g.bench_with_input(BenchmarkId::new("matrix", n), &n, |bch, &n| {
            bch.iter(|| lefschetz_matrix(black_box(n), Parity::Even).unwrap())
        });
        let m = lefschetz_matrix(n, Parity::Even).unwrap();
        g.bench_with_input(BenchmarkId::new("char_poly", n), &n, |bch, _| bch.iter(|| m.char_poly().unwrap()));
    }
    g.finish();
}

fn cpn(c: &mut Criterion) {
    let mut g = c.benchmark_group("cpn_table");
    for n in [1usize, 2, 3] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, &n| {
            bch.iter(|| cpn_structure_constants(black_box(n)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(kernels, wedge, dh, lefschetz, cpn);
criterion_main!(kernels);
