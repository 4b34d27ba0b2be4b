use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use samelson_core::cohomology::{make_group, p1_table_with, Family};
use samelson_core::samelson::samelson_table_with;
use samelson_core::sweep::{sweep, SweepConfig};
use samelson_core::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn p1_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("p1_table");
    for (family, n, p) in [(Family::SOEven, 10, 37), (Family::SU, 8, 31)] {
        let g = make_group(family, n, p).unwrap();
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, format!("{}@{p}", g.name())), &g, |b, g| {
                b.iter(|| p1_table_with(black_box(g), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn samelson_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("samelson_table");
    let g = make_group(Family::SOEven, 10, 37).unwrap();
    for (label, exec) in MODES {
        group.bench_function(label, |b| b.iter(|| samelson_table_with(black_box(&g), exec).unwrap()));
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (label, exec) in MODES {
        let cfg = SweepConfig {
            families: vec![Family::SOEven, Family::SU, Family::Sp],
            n_min: 2,
            n_max: 8,
            p_max: 29,
            exec,
        };
        group.bench_function(label, |b| b.iter(|| sweep(black_box(&cfg))));
    }
    group.finish();
}

criterion_group!(benches, p1_tables, samelson_tables, sweeps);
criterion_main!(benches);
