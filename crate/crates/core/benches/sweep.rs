use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use uzsl2_core::exec::Execution;
use uzsl2_core::qdot::{sweep_compare, QdotParams};
use uzsl2_core::spectra::{classify_phase_and_scan, h_minus_params};
use uzsl2_core::Tolerances;

fn ep_scan(c: &mut Criterion) {
    let grid: Vec<_> = (0..201).map(|i| h_minus_params(1.0, -3.0 + 0.03 * i as f64)).collect();
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("ep_scan_d8");
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| classify_phase_and_scan(black_box(&grid), 8, 0.5, &tol, exec).unwrap())
        });
    }
    group.finish();
}

fn qdot(c: &mut Criterion) {
    let eps: Vec<f64> = (0..2000).map(|i| -100.0 + 0.125 * i as f64).collect();
    let p = QdotParams::default();
    let mut group = c.benchmark_group("qdot_sweep");
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| sweep_compare(&p, black_box(&eps), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, ep_scan, qdot);
criterion_main!(benches);
