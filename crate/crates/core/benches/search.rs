use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use unilie::enumeration::{classify, one_factorizations, sign_class_report, ClassifyOptions};
use unilie::families::k5_near_one_factorization;
use unilie::par::{Budget, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_q5");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = ClassifyOptions { exec, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| classify(black_box(5), &opts, &Budget::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_factorizations(c: &mut Criterion) {
    let mut group = c.benchmark_group("one_factorizations_k8");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| one_factorizations(black_box(8), exec, &Budget::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_sign_classes(c: &mut Criterion) {
    let k5 = k5_near_one_factorization().unwrap();
    let mut group = c.benchmark_group("sign_classes_k5");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sign_class_report(black_box(&k5), exec, &Budget::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_classify, bench_factorizations, bench_sign_classes);
criterion_main!(benches);
