use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fracparity::linalg::{rank2_update_factorization, rank_factorization};
use fracparity::solve::{solve, Algorithm};
use fracparity_bench::{instance, square, update_fixture, SEED, SIZES};
use std::hint::black_box;

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    g.sample_size(10);
    for alg in [Algorithm::Simple, Algorithm::Sparse, Algorithm::Faster, Algorithm::MaxMatching] {
        for (n, m) in SIZES {
            let ls = instance(n, m);
            g.bench_with_input(BenchmarkId::new(alg.name(), format!("{n}x{m}")), &ls, |b, ls| {
                b.iter(|| solve(black_box(ls), alg, SEED).expect("solve"))
            });
        }
    }
    g.finish();
}

fn linalg(c: &mut Criterion) {
    let mut g = c.benchmark_group("linalg");
    for n in [64, 128, 256] {
        let a = square(n);
        g.bench_with_input(BenchmarkId::new("inverse", n), &a, |b, a| b.iter(|| a.inverse().expect("invertible")));
        let (m, [u1, v1, u2, v2]) = update_fixture(n, n / 2);
        let fac = rank_factorization(&m);
        g.bench_with_input(BenchmarkId::new("rank2_update", n), &fac, |b, fac| {
            b.iter(|| rank2_update_factorization(fac, &u1, &v1, &u2, &v2))
        });
        g.bench_with_input(BenchmarkId::new("refactor", n), &m, |b, m| b.iter(|| rank_factorization(m)));
    }
    g.finish();
}

criterion_group!(benches, solvers, linalg);
criterion_main!(benches);
