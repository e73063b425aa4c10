use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ffblock::random::{random_matrix, seeded};
use ffblock::{mat_mul, IntElem, Mat, MulBackend, OpCounts};
use std::hint::black_box;

fn square(c: &mut Criterion) {
    let mut group = c.benchmark_group("matmul_square");
    for n in [16usize, 32, 64] {
        let mut rng = seeded(n as u64);
        let a: Mat<IntElem> = random_matrix(n, n, 1000, &mut rng);
        let b: Mat<IntElem> = random_matrix(n, n, 1000, &mut rng);
        for backend in [MulBackend::Classical, MulBackend::Strassen { cutoff: 8 }, MulBackend::Strassen { cutoff: 16 }] {
            group.bench_with_input(BenchmarkId::new(backend.name(), n), &(&a, &b), |bench, (a, b)| {
                bench.iter(|| mat_mul(black_box(a), black_box(b), backend, &mut OpCounts::default()).unwrap())
            });
        }
    }
    group.finish();
}

fn rectangular(c: &mut Criterion) {
    let mut group = c.benchmark_group("matmul_rect");
    let mut rng = seeded(7);
    let a: Mat<IntElem> = random_matrix(32, 32, 1000, &mut rng);
    let b: Mat<IntElem> = random_matrix(32, 65, 1000, &mut rng);
    for backend in [MulBackend::Classical, MulBackend::Strassen { cutoff: 8 }] {
        group.bench_function(backend.name(), |bench| {
            bench.iter(|| mat_mul(black_box(&a), black_box(&b), backend, &mut OpCounts::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, square, rectangular);
criterion_main!(benches);
