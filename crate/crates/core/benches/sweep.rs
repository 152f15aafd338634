use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use df_core::analysis::{sweep, Execution};
use df_core::approximants::{MethodId, MethodSpec};
use df_core::special::SpecialNumbers;

fn specs() -> Vec<MethodSpec> {
    let mut out = Vec::new();
    for n in (100..=800).step_by(100) {
        out.push(MethodSpec::new(MethodId::BernoulliBasic, 2 * n));
        out.push(MethodSpec::new(MethodId::BernoulliCorrected, 2 * n));
        out.push(MethodSpec::new(MethodId::EulerBasic, n));
        out.push(MethodSpec::new(MethodId::RatioEulerSq, n));
    }
    out
}

fn bench_sweep(c: &mut Criterion) {
    let numbers = SpecialNumbers::new();
    let specs = specs();
    // tables and the reference constant are shared setup, not measured
    sweep(&numbers, &specs, Execution::Sequential).unwrap();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sweep(&numbers, &specs, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
