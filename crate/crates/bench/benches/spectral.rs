use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use synalg::{dyadic_expand, eig, spectral_meet, TolerancePolicy};
use synalg_bench::{effect_pair, symmetric};

const DIMS: [usize; 4] = [2, 4, 8, 16];

fn bench_eig(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig");
    for n in DIMS {
        let a = symmetric(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| eig(black_box(a))));
    }
    group.finish();
}

fn bench_meet(c: &mut Criterion) {
    let tol = TolerancePolicy::default();
    let mut group = c.benchmark_group("spectral_meet");
    for n in DIMS {
        let (e, f) = effect_pair(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(e, f), |b, (e, f)| {
            b.iter(|| spectral_meet(black_box(e.matrix()), black_box(f.matrix()), &tol).unwrap())
        });
    }
    group.finish();
}

fn bench_dyadic(c: &mut Criterion) {
    let tol = TolerancePolicy::default();
    let mut group = c.benchmark_group("dyadic_expand");
    for n in DIMS {
        let (e, _) = effect_pair(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &e, |b, e| {
            b.iter(|| dyadic_expand(black_box(e), 30, &tol).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_eig, bench_meet, bench_dyadic);
criterion_main!(benches);
