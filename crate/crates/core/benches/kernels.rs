use std::hint::black_box;
use std::sync::Arc;

use atlas::classify::Classifier;
use atlas::families::{build_b, build_fp, build_is};
use atlas::structure::{Analysis, DEFAULT_M_BUDGET};
use atlas::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn table_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_is5");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| build_is(black_box(5), 5, exec).unwrap())
        });
    }
    group.finish();
}

fn conditions(c: &mut Criterion) {
    let s = build_b(3, 3, Exec::Parallel).unwrap().semigroup;
    let a = Analysis::new(Arc::new(s)).unwrap();
    let candidates = a.minimal_idempotents[0].clone();
    let mut group = c.benchmark_group("conditions_b3");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| a.check_conditions(black_box(&candidates), exec).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let s = build_fp(3, 4, Exec::Parallel).unwrap().semigroup;
    let a = Analysis::new(Arc::new(s)).unwrap();
    let m = a.find_m(DEFAULT_M_BUDGET, Exec::Parallel).unwrap().found().unwrap();
    let mut group = c.benchmark_group("enumerate_fp3");
    for (name, exec) in STRATEGIES {
        let cl = Classifier::new(&a, m.clone(), exec).unwrap();
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| cl.enumerate_maximal(exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, table_construction, conditions, enumeration);
criterion_main!(benches);
