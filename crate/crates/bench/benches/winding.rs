use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use winding_bench::{params, setups};
use winding::laws::{pdf_disk, pdf_point};
use winding::oracles::{
    annulus_lead_eigenvalue, disk_density_quadrature, point_density_quadrature,
};
use winding::sde::{simulate_winding, step, substream};
use winding::{ParticleState, QuadratureSpec};

fn bench_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("step");
    for (name, geometry, beta, r0) in setups() {
        let state = ParticleState::start(r0);
        group.bench_function(name, |b| {
            b.iter(|| {
                step(
                    black_box(&state),
                    1e-3,
                    black_box([0.3, -0.7]),
                    &geometry,
                    beta,
                )
            })
        });
    }
    group.finish();
}

fn bench_trajectory(c: &mut Criterion) {
    let mut group = c.benchmark_group("trajectory");
    group.sample_size(20);
    for (name, geometry, beta, r0) in setups() {
        let p = params(beta, r0, 10.0);
        let steps = simulate_winding(&p, &geometry, &mut substream(p.seed, 0))
            .unwrap()
            .n_steps;
        group.throughput(Throughput::Elements(steps));
        group.bench_function(BenchmarkId::new(name, "t=10"), |b| {
            b.iter(|| simulate_winding(&p, &geometry, &mut substream(p.seed, 0)).unwrap())
        });
    }
    group.finish();
}

fn bench_laws(c: &mut Criterion) {
    let mut group = c.benchmark_group("law");
    for x in [0.05, 0.5, 5.0] {
        group.bench_with_input(BenchmarkId::new("pdf_disk", x), &x, |b, &x| {
            b.iter(|| pdf_disk(black_box(x)))
        });
    }
    group.bench_function("pdf_point", |b| b.iter(|| pdf_point(black_box(2.0))));
    group.finish();
}

fn bench_oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let spec = QuadratureSpec::default();
    group.bench_function("point_quad", |b| {
        b.iter(|| point_density_quadrature(black_box(50.0), 1e8, 1.0, 1.0, &spec).unwrap())
    });
    group.bench_function("disk_quad", |b| {
        b.iter(|| disk_density_quadrature(black_box(50.0), 1e8, 0.1, 0.1, 3.0, &spec).unwrap())
    });
    group.bench_function("eigenvalue", |b| {
        b.iter(|| annulus_lead_eigenvalue(0.5, 2.0, black_box(0.01)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_step,
    bench_trajectory,
    bench_laws,
    bench_oracles
);
criterion_main!(benches);
