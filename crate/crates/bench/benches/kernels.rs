use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use viscomplex_bench::{free_pair, grid_torus, random_matrix, sample_points, strip_cover};
use viscomplex_core::cover::nerve;
use viscomplex_core::homology::{homology, snf, snf_sparse};
use viscomplex_core::{CuspModel, GroupPresentation, TangentPlaneSpec, WarpFunction};

fn smith(c: &mut Criterion) {
    let m = random_matrix(1, 30, 30);
    c.bench_function("snf dense 30x30 with transforms", |b| b.iter(|| snf(black_box(&m))));
    let torus = grid_torus(40);
    let d2 = torus.boundary_matrix(2).unwrap();
    c.bench_function("snf sparse torus 40x40 boundary 2", |b| b.iter(|| snf_sparse(black_box(&d2))));
    c.bench_function("homology torus 40x40", |b| b.iter(|| homology(black_box(&torus), &[2, 3]).unwrap()));
}

fn cover(c: &mut Criterion) {
    let (_, _, oracle) = strip_cover();
    let mut g = c.benchmark_group("nerve");
    g.sample_size(10);
    g.bench_function("cusp strip dim 2", |b| b.iter(|| nerve(black_box(&oracle), 2).unwrap()));
    g.finish();
    let group = GroupPresentation::new(free_pair(), 3).unwrap();
    let pts = sample_points(2, 100);
    c.bench_function("d_gamma free pair L=3 x100", |b| b.iter(|| pts.iter().map(|p| group.d_gamma(p)).sum::<f64>()));
}

fn curvature(c: &mut Criterion) {
    let m = CuspModel::new(2, 1.0, WarpFunction::default()).unwrap();
    let planes: Vec<TangentPlaneSpec> =
        (0..10_000).map(|i| TangentPlaneSpec::new(10.0 * i as f64 / 10_000.0, ((i % 21) as f64 - 10.0) / 10.0).unwrap()).collect();
    c.bench_function("curvature sweep 10k planes", |b| b.iter(|| planes.iter().map(|p| m.sectional_curvature(p)).sum::<f64>()));
    c.bench_function("visibility integral T=1e4", |b| b.iter(|| m.visibility_integral(black_box(1e4)).unwrap()));
}

criterion_group!(benches, smith, cover, curvature);
criterion_main!(benches);
