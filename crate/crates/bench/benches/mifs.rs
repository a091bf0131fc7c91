use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mifs::{
    chaos_game, hausdorff_distance, hutchinson_step, make_contraction, rasterize,
    sample_random_mifs, sample_random_specs, ChaosOptions, Complex64, PointCloud, Viewport,
};
use std::hint::black_box;

fn generator(c: &mut Criterion) {
    let specs = sample_random_specs(64, 1, 0.1, 0.9).unwrap();
    c.bench_function("make_contraction x64", |b| {
        b.iter(|| {
            for spec in &specs {
                black_box(make_contraction(black_box(spec)).unwrap());
            }
        })
    });
}

fn hutchinson(c: &mut Criterion) {
    let sys = sample_random_mifs(3, 2, 0.3, 0.5).unwrap();
    let mut group = c.benchmark_group("hutchinson_step");
    for n in [1_000, 100_000] {
        let cloud = chaos_game(&sys, &ChaosOptions::new(n, 0));
        group.bench_with_input(BenchmarkId::from_parameter(n), &cloud, |b, y| {
            b.iter(|| hutchinson_step(&sys, y))
        });
    }
    group.finish();
}

fn hausdorff(c: &mut Criterion) {
    let sys = sample_random_mifs(3, 3, 0.3, 0.5).unwrap();
    let mut group = c.benchmark_group("hausdorff_distance");
    group.sample_size(20);
    for n in [10_000, 200_000] {
        let a = chaos_game(&sys, &ChaosOptions::new(n, 1));
        let b = chaos_game(&sys, &ChaosOptions::new(n, 2));
        group.bench_with_input(BenchmarkId::from_parameter(n), &(a, b), |bench, (a, b)| {
            bench.iter(|| hausdorff_distance(a, b))
        });
    }
    group.finish();
}

fn chaos(c: &mut Criterion) {
    let sys = sample_random_mifs(4, 4, 0.2, 0.6).unwrap();
    c.bench_function("chaos_game 1e5", |b| {
        b.iter(|| chaos_game(&sys, &ChaosOptions::new(100_000, 7)))
    });
}

fn raster(c: &mut Criterion) {
    let sys = sample_random_mifs(3, 5, 0.3, 0.5).unwrap();
    let cloud = chaos_game(&sys, &ChaosOptions::new(1_000_000, 0));
    c.bench_function("rasterize 1e6 points 1024x1024", |b| {
        b.iter(|| rasterize(&cloud, 1024, 1024, Viewport::unit_disc()).unwrap())
    });
    let single = PointCloud::single(Complex64::new(0.0, 0.0));
    c.bench_function("rasterize empty-ish 1024x1024", |b| {
        b.iter(|| rasterize(&single, 1024, 1024, Viewport::unit_disc()).unwrap())
    });
}

criterion_group!(benches, generator, hutchinson, hausdorff, chaos, raster);
criterion_main!(benches);
