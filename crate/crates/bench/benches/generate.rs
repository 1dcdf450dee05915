use cergen::{generate_connected_gnm_detailed, generate_connected_gnp, RngStream};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

fn bench_gnp(c: &mut Criterion) {
    let mut group = c.benchmark_group("gnp-connected");
    group.sample_size(10);
    for n in [10_000u32, 100_000, 1_000_000] {
        let p = 3.0 / n as f64;
        group.throughput(Throughput::Elements(n as u64));
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            let mut stream = RngStream::new(1).substream(&format!("bench-gnp-{n}"));
            b.iter(|| generate_connected_gnp(&mut stream, n, p).unwrap());
        });
    }
    group.finish();
}

fn bench_gnm(c: &mut Criterion) {
    let mut group = c.benchmark_group("gnm-connected");
    group.sample_size(10);
    for n in [1_000u32, 10_000] {
        // twice the tree budget: the edge-count match costs O(sqrt(n)) restarts
        let m = 2 * n as u64;
        group.throughput(Throughput::Elements(n as u64));
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            let mut stream = RngStream::new(2).substream(&format!("bench-gnm-{n}"));
            b.iter(|| generate_connected_gnm_detailed(&mut stream, n, m).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_gnp, bench_gnm);
criterion_main!(benches);
