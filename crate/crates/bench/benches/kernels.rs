use std::hint::black_box;

use besov_bench::{classifier_grid, points};
use besov_core::kernel::{kernel_eval, KernelSpec};
use besov_core::operators::{Evaluator, NamedFunction};
use besov_core::quadrature::gauss::gauss_jacobi;
use besov_core::{classify, TargetSpace};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_eval");
    for &(dim, radius) in &[(2, 0.5), (3, 0.5), (3, 0.95), (6, 0.95)] {
        let spec = KernelSpec::new(1.5, dim).unwrap();
        let xs = points(dim, 16, radius);
        let ys = points(dim, 16, radius);
        group.bench_with_input(BenchmarkId::new(format!("n{dim}"), radius), &(xs, ys), |b, (xs, ys)| {
            b.iter(|| {
                xs.iter()
                    .zip(ys)
                    .map(|(x, y)| kernel_eval(&spec, black_box(x), black_box(y)).unwrap())
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

fn jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss_jacobi");
    for n in [32, 128, 512] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| gauss_jacobi(black_box(n), -0.5, 1.5))
        });
    }
    group.finish();
}

fn classifier(c: &mut Criterion) {
    let grid = classifier_grid();
    c.bench_function("classify_grid_300", |b| {
        b.iter(|| {
            grid.iter()
                .filter(|p| classify(black_box(p), TargetSpace::Besov).unwrap().bounded)
                .count()
        })
    });
}

fn operator(c: &mut Criterion) {
    let ev = Evaluator::new(2).unwrap();
    let f: NamedFunction = "fuv:0.3,1".parse().unwrap();
    c.bench_function("apply_t_n2", |b| {
        b.iter(|| ev.apply_t(1.0, 0.5, &f, black_box(&[0.3, -0.2])).unwrap())
    });
}

criterion_group!(benches, kernel, jacobi, classifier, operator);
criterion_main!(benches);
