//! Parameter-sweep throughput: rayon pool vs the sequential reference
//! path on the same envelope problem.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use intervalkit::ide::{solve_param_sweep_seq, IdeProblem, Method};
use intervalkit::interval::Interval;

fn sweep_problem(density: usize) -> IdeProblem {
    let mut p = IdeProblem::new(
        "[1,2]*t/(1+x^2)",
        0.0,
        4.0,
        Interval::from_endpoints(-1.0, 1.0).unwrap(),
    )
    .unwrap();
    p.method = Method::ParamSweep;
    p.step = 0.004;
    p.sweep_density = density;
    p
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("param_sweep");
    for density in [5usize, 9] {
        let p = sweep_problem(density);
        group.bench_function(format!("sequential_d{density}"), |b| {
            b.iter(|| solve_param_sweep_seq(black_box(&p)).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_function(format!("rayon_d{density}"), |b| {
            b.iter(|| intervalkit::ide::solve_param_sweep_par(black_box(&p)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
