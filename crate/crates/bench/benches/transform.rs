use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fwl_core::{char_count_transform, DEFAULT_BUDGET};

fn bench_transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_count_transform");
    for (p, n) in [(2u32, 16u32), (2, 20), (3, 12)] {
        let size = (p as usize).pow(n);
        // every third point as a stand-in for a dense defining set
        let support: Vec<usize> = (0..size).step_by(3).collect();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("p{p}_n{n}")),
            &(p, n),
            |b, &(p, n)| {
                b.iter(|| {
                    char_count_transform(p, n, support.iter().copied(), DEFAULT_BUDGET).unwrap()
                })
            },
        );
        black_box(&support);
    }
    group.finish();
}

criterion_group!(benches, bench_transform);
criterion_main!(benches);
