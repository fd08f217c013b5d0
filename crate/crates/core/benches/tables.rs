//! Sequential vs parallel table generation and multi-prime scans.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hyperquad::fields::{is_prime, PrimeField};
use hyperquad::par::Exec;
use hyperquad::table::{make_table_with, scan};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("make_table");
    for p in [17u64, 59, 101] {
        let k = PrimeField::new(p).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, p), &k, |b, &k| {
                b.iter(|| make_table_with(black_box(k), 1, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn scans(c: &mut Criterion) {
    let primes: Vec<PrimeField> = (7..200)
        .filter(|&n| n % 6 == 5 && is_prime(n) && n != 5 && n != 13)
        .map(|n| PrimeField::new(n).unwrap())
        .collect();
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for t in [1u32, 2] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, t), &t, |b, &t| {
                b.iter(|| scan(black_box(&primes), t, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, tables, scans);
criterion_main!(benches);
