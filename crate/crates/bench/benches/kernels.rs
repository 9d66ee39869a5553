use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use std::hint::black_box;

use kummer24_core::atlas::{enumerate_24, group_orbits};
use kummer24_core::rational::ratq;
use kummer24_core::series::{eval_2f1, eval_2f1_exact, EvalOptions};
use kummer24_core::verify::{run_case_suite, SamplePolicy};
use kummer24_core::{degeneracy_case, EquationParams};

fn bench_classify(c: &mut Criterion) {
    let p = EquationParams::parse("-1", "-3", "-8").unwrap();
    c.bench_function("degeneracy_case additive witness", |b| {
        b.iter(|| degeneracy_case(black_box(&p)))
    });
}

fn bench_series(c: &mut Criterion) {
    let (a, bb, cc) = (ratq(1, 3), ratq(2, 5), ratq(9, 7));
    let opts = EvalOptions::default();
    let z = Complex64::new(0.6, 0.4);
    c.bench_function("gauss series at |z| = 0.72", |b| {
        b.iter(|| eval_2f1(black_box(&a), &bb, &cc, black_box(z), &opts))
    });
    let (ta, tb, tc) = (ratq(-12, 1), ratq(22, 7), ratq(-3, 11));
    let zr = ratq(3, 10);
    c.bench_function("terminating series exact, degree 12", |b| {
        b.iter(|| eval_2f1_exact(black_box(&ta), &tb, &tc, black_box(&zr)))
    });
}

fn bench_atlas(c: &mut Criterion) {
    let p = EquationParams::parse("-1", "2", "-2").unwrap();
    c.bench_function("enumerate and group the atlas", |b| {
        b.iter(|| {
            let descs = enumerate_24(black_box(&p));
            group_orbits(&p, &descs).unwrap()
        })
    });
}

fn bench_suite(c: &mut Criterion) {
    let p = EquationParams::parse("-1", "2", "-2").unwrap();
    let policy = SamplePolicy { count: 2, seed: 0 };
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    group.bench_function("trivial-monodromy verification suite", |b| {
        b.iter(|| run_case_suite(black_box(&p), &policy).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_classify, bench_series, bench_atlas, bench_suite);
criterion_main!(benches);
