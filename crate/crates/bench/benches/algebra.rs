use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mipkit::algtable::build_aug_table;
use mipkit::canon::canonical_form;
use mipkit::Caps;
use mipkit_bench::fixtures;

fn tables(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("build_aug_table");
    for (g, level) in fixtures() {
        group.bench_with_input(BenchmarkId::new(g.name().to_string(), level), &level, |b, &s| {
            b.iter(|| build_aug_table(&g, s, &caps).unwrap())
        });
    }
    group.finish();
}

fn canonical_forms(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("canonical_form");
    group.sample_size(10);
    for (g, level) in fixtures() {
        let t = build_aug_table(&g, level, &caps).unwrap();
        for n in [3, 4] {
            group.bench_with_input(BenchmarkId::new(g.name().to_string(), n), &n, |b, &n| {
                b.iter(|| canonical_form(&t, n, &caps).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, tables, canonical_forms);
criterion_main!(benches);
