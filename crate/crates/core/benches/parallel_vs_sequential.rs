use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fuzzytopo::claims::{self, CheckConfig, Claim, ClaimId};
use fuzzytopo::search::{extremal_search_with, GraphClass, SearchTask};
use fuzzytopo::{Direction, Execution, IndexKind};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn random_claims(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_random");
    group.sample_size(10);
    for (name, execution) in MODES {
        let cfg = CheckConfig { execution, ..Default::default() };
        group.bench_with_input(BenchmarkId::new(name, 2000), &cfg, |b, cfg| {
            b.iter(|| claims::verify_random(Claim::new(ClaimId::LowerSqrt2MDelta), 2000, (2, 12), black_box(7), cfg).unwrap())
        });
    }
    group.finish();
}

fn tree_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("extremal_search_tree_min");
    group.sample_size(10);
    let task = SearchTask::new(GraphClass::Tree, 9, 1.0, IndexKind::Sombor, Direction::Min);
    for (name, execution) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 9), &execution, |b, &exec| {
            b.iter(|| extremal_search_with(black_box(&task), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, random_claims, tree_search);
criterion_main!(benches);
