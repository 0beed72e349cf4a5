use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nematic_relief_core::halfplane::{coverage_map, coverage_map_seq};
use nematic_relief_core::profiles::LineFrustration;

fn bench_coverage(c: &mut Criterion) {
    let fr = LineFrustration::tanh_step(2.0);
    let window = ((-5.0, 5.0), (0.0, 5.0));
    let mut group = c.benchmark_group("coverage_map");
    for &n in &[50usize, 100, 200] {
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| coverage_map(window, &fr, 2.0, (n, n)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| coverage_map_seq(window, &fr, 2.0, (n, n)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_coverage);
criterion_main!(benches);
