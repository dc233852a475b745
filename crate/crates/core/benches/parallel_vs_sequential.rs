use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::BigRational;
use phasespace::exec::map_slice;
use phasespace::fock::{fock_state, mixture, trace_expectation, wigner_grid_with};
use phasespace::{dequantize, DensityMatrix, Execution, GridSpec, OpPoly};

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn state() -> DensityMatrix {
    let states: Vec<_> = (0..6).map(|n| fock_state(n, 48).unwrap()).collect();
    mixture(&[0.3, 0.2, 0.2, 0.1, 0.1, 0.1], &states).unwrap()
}

fn bench_wigner(c: &mut Criterion) {
    let hbar = BigRational::from_integer(1.into());
    let u = state();
    let spec = GridSpec::default();
    let mut group = c.benchmark_group("wigner_grid");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| wigner_grid_with(black_box(&u), &spec, &hbar, exec).unwrap())
        });
    }
    group.finish();

    let grid = wigner_grid_with(&u, &spec, &hbar, Execution::default()).unwrap();
    let symbol = dequantize(&OpPoly::oscillator().pow(2));
    let mut group = c.benchmark_group("overlap");
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| grid.overlap_with(black_box(&symbol), &hbar, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_trace_batch(c: &mut Criterion) {
    let hbar = BigRational::from_integer(1.into());
    let u = state();
    let ops: Vec<OpPoly> = (1..=12).map(|k| (&OpPoly::q() + &OpPoly::p()).pow(k % 5)).collect();
    let mut group = c.benchmark_group("trace_batch");
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| map_slice(exec, &ops, |op| trace_expectation(&u, op, &hbar).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_wigner, bench_trace_batch);
criterion_main!(benches);
