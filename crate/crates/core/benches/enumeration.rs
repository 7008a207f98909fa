use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use linkform::par::Execution;
use linkform::units::{enumerate_unitary, DEFAULT_CANDIDATE_CAP};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_unitary");
    group.sample_size(10);
    for (m, span) in [(6u64, 2u32), (10, 2), (14, 2)] {
        for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, format!("m={m},D={span}")), &(m, span), |b, &(m, span)| {
                b.iter(|| enumerate_unitary(black_box(m), black_box(span), DEFAULT_CANDIDATE_CAP, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);
