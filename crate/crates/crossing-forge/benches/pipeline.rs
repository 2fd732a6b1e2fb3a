//! Relabeling-sweep throughput: the default mode (rayon when the `parallel`
//! feature is on) against the forced-sequential loop on the same workload.
//! Run with and without `--no-default-features` to see both sides.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use crossing_forge::batch::{relabel_sweep, relabel_sweep_sequential};
use crossing_forge::configs::ConfigKind;
use crossing_forge::generators::{gen_doubled, gen_optimal_2planar, PentagonBase};

fn sweep_benches(c: &mut Criterion) {
    let doubled = gen_doubled(ConfigKind::F36);
    let dodecahedron = gen_optimal_2planar(PentagonBase::Dodecahedron).unwrap();
    let mut group = c.benchmark_group("relabel-sweep");
    group.sample_size(20);
    for (name, map, count) in [
        ("doubled-f36", &doubled, 32usize),
        ("optimal-dodecahedron", &dodecahedron, 8),
    ] {
        group.bench_with_input(BenchmarkId::new("default", name), &count, |b, &count| {
            b.iter(|| relabel_sweep(map, count, 1));
        });
        group.bench_with_input(BenchmarkId::new("sequential", name), &count, |b, &count| {
            b.iter(|| relabel_sweep_sequential(map, count, 1));
        });
    }
    group.finish();
}

criterion_group!(benches, sweep_benches);
criterion_main!(benches);
