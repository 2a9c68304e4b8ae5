//! Throughput benchmarks for the hot paths: dense GF(2) elimination,
//! lattice enumeration, full functor verification and the torsion
//! machinery. Run with `cargo bench -p gysin-bench`.

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gysin_core::builtin;
use gysin_core::modules::tor_les;
use gysin_core::oracle;
use gysin_core::{Gf2Matrix, SubgroupLattice, VerifyOptions};

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(0.5) {
                m.set(r, c, true);
            }
        }
    }
    m
}

fn bench_gf2(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2");
    for n in [64usize, 256] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random_matrix(&mut rng, n, n);
        group.bench_with_input(BenchmarkId::new("rref", n), &m, |b, m| {
            b.iter(|| m.rref());
        });
        group.bench_with_input(BenchmarkId::new("kernel", n), &m, |b, m| {
            b.iter(|| m.kernel_basis());
        });
    }
    group.finish();
}

fn bench_lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    for d in [4usize, 5, 6] {
        group.bench_with_input(BenchmarkId::new("enumerate", d), &d, |b, &d| {
            b.iter(|| SubgroupLattice::new(d).unwrap());
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    let example = builtin::example_2_2_4_1();
    group.bench_function("example-2-2-4-1", |b| {
        b.iter(|| example.verify(&VerifyOptions::default()));
    });
    let product = builtin::product_spheres(&[1, 2, 3]).unwrap();
    group.bench_function("product-spheres-123", |b| {
        b.iter(|| product.verify(&VerifyOptions::default()));
    });
    group.finish();
}

fn bench_modules(c: &mut Criterion) {
    let mut group = c.benchmark_group("modules");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    group.bench_function("jordan-type-dim-16", |b| {
        b.iter_batched(
            || oracle::random_tmodule(&mut rng, 16),
            |tm| tm.jordan_type(),
            BatchSize::SmallInput,
        );
    });
    group.bench_function("tor-les-dim-12", |b| {
        let mut seed = 0u64;
        b.iter_batched(
            || {
                seed += 1;
                oracle::random_ses(seed, 12).unwrap()
            },
            |ses| tor_les(&ses).unwrap(),
            BatchSize::SmallInput,
        );
    });
    group.finish();
}

criterion_group!(benches, bench_gf2, bench_lattice, bench_verify, bench_modules);
criterion_main!(benches);
