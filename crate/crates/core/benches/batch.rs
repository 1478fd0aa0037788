use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hcompact::par::Exec;
use hcompact::verify::{certify_family, default_labels, run_suite};

fn family(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify_family");
    group.sample_size(10);
    let labels = default_labels(20);
    for n in [1, 3] {
        for (name, exec) in [
            ("sequential", Exec::Sequential),
            ("parallel", Exec::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| certify_family(n, &labels, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_suite");
    group.sample_size(10);
    let names: Vec<String> = ["structure-roundtrip", "descent-diagram", "lemma-kernel-ev"]
        .map(String::from)
        .to_vec();
    for (name, exec) in [
        ("sequential", Exec::Sequential),
        ("parallel", Exec::Parallel),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| run_suite(&names, &[1, 2, 3], 0, exec, false).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, family, suite);
criterion_main!(benches);
