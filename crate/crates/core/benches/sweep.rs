use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use phihh::convexity::{check_membership_with, ClassKind, PairMode, PathSamples};
use phihh::harness::{sweep, SuiteConfig};
use phihh::{Execution, TheoremId};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn suite_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite_sweep");
    group.sample_size(10);
    for mode in MODES {
        let cfg = SuiteConfig {
            corpus: Some(vec!["exp".into(), "cubic".into(), "sine".into()]),
            theorems: Some(vec![TheoremId::Tt2, TheoremId::Tt5, TheoremId::Z]),
            segments: 8,
            grid: 257,
            execution: mode,
            ..SuiteConfig::default()
        };
        group.bench_function(BenchmarkId::from_parameter(format!("{mode:?}")), |b| b.iter(|| sweep(&cfg).unwrap()));
    }
    group.finish();
}

fn all_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_pairs_membership");
    group.sample_size(10);
    let samples = PathSamples::from_fn(257, |t| (4.0 * t).sin() + 2.0);
    for mode in MODES {
        group.bench_function(BenchmarkId::from_parameter(format!("{mode:?}")), |b| {
            b.iter(|| check_membership_with(&samples, ClassKind::PhiConvex, 1e-9, PairMode::AllPairs, mode, "g").unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, suite_sweep, all_pairs);
criterion_main!(benches);
