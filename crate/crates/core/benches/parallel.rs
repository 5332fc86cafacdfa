use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ghz_distill::fidelity::optimal_lu_fidelity_with;
use ghz_distill::monotone::audit_random_batch;
use ghz_distill::osbp::{build_povms, optimal_probability};
use ghz_distill::protocol::run_protocol_with;
use ghz_distill::sample::{random_state, trial_rng};
use ghz_distill::{decompose, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn protocol(c: &mut Criterion) {
    let state = random_state(&mut trial_rng(1, 0));
    let d = decompose(&state).unwrap();
    let povms = build_povms(&d, &optimal_probability(&d).unwrap()).unwrap();
    let mut group = c.benchmark_group("run_protocol_20k");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_protocol_with(exec, black_box(&state), &povms, 20_000, 7).unwrap())
        });
    }
    group.finish();
}

fn audits(c: &mut Criterion) {
    let mut group = c.benchmark_group("audit_batch_64");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| audit_random_batch(exec, black_box(64), 3))
        });
    }
    group.finish();
}

fn fidelity(c: &mut Criterion) {
    let state = random_state(&mut trial_rng(2, 0));
    let mut group = c.benchmark_group("lu_fidelity_32_restarts");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| optimal_lu_fidelity_with(exec, black_box(&state), 32, 5))
        });
    }
    group.finish();
}

criterion_group!(benches, protocol, audits, fidelity);
criterion_main!(benches);
