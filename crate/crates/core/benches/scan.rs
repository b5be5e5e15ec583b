//! Sequential against data-parallel execution on the main scan kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qsrlab_core::actions::ksubset_action;
use qsrlab_core::constructors::{make_hs_type, make_sym_alt};
use qsrlab_core::dataset::{dataset_path, default_data_dir, load_dataset};
use qsrlab_core::par::Exec;
use qsrlab_core::qsr::{count_prime_order_qsr, primes_up_to, scan_action};
use qsrlab_core::structure::class_orbits;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn ksubset_scan(c: &mut Criterion) {
    let g = make_sym_alt(11, false).unwrap();
    let a = ksubset_action(&g, 4).unwrap();
    let primes = primes_up_to(11);
    let mut group = c.benchmark_group("scan Sym(11) on 4-subsets");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let mut rng = ChaCha8Rng::seed_from_u64(1);
                black_box(scan_action(&a, &primes, &mut rng, exec).unwrap())
            })
        });
    }
    group.finish();
}

fn exhaustive_count(c: &mut Criterion) {
    let t = make_sym_alt(5, true).unwrap();
    let a = make_hs_type(&t, true, true).unwrap();
    let mut group = c.benchmark_group("exhaustive prime-order count, holomorph on 60 points");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(count_prime_order_qsr(&a, 10_000_000, exec).unwrap()))
        });
    }
    group.finish();
}

fn mathieu_classes(c: &mut Criterion) {
    let d = load_dataset(&dataset_path(&default_data_dir(), "M12")).unwrap();
    let mut group = c.benchmark_group("class orbits of M12");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let mut rng = ChaCha8Rng::seed_from_u64(1);
                black_box(class_orbits(&d.group, None, &mut rng, exec).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, ksubset_scan, exhaustive_count, mathieu_classes);
criterion_main!(benches);
