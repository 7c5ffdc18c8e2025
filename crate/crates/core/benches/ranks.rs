//! Parallel versus single-threaded runs of the data-parallel hot spots.
//!
//! With the `parallel` feature each benchmark runs twice: on the global
//! rayon pool and inside a one-thread pool. Without it only the sequential
//! variant exists.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use weyr::compose::sierpinski;
use weyr::mci::{strong_lefschetz_check, AlgebraElement, MciDescriptor};
use weyr::sweep::{verify_sweep, SweepRequest, DEFAULT_SEED};
use weyr::weyr::rank_ladder;
use weyr::{ExactMatrix, FieldSpec};

const Q: FieldSpec = FieldSpec::Rationals;

/// Runs a closure in some thread-pool setting.
type Runner = Box<dyn Fn(&mut (dyn FnMut() + Send))>;

fn modes() -> Vec<(&'static str, Runner)> {
    let mut v: Vec<(&'static str, Runner)> = Vec::new();
    #[cfg(feature = "parallel")]
    {
        v.push(("parallel", Box::new(|f: &mut (dyn FnMut() + Send)| f())));
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        v.push(("sequential", Box::new(move |f: &mut (dyn FnMut() + Send)| pool.install(f))));
    }
    #[cfg(not(feature = "parallel"))]
    v.push(("sequential", Box::new(|f: &mut (dyn FnMut() + Send)| f())));
    v
}

fn shifted_sierpinski(n: u32) -> ExactMatrix {
    sierpinski(n, Q).unwrap().shift(&Q.one()).unwrap()
}

fn bench_matrix(c: &mut Criterion) {
    let mut g = c.benchmark_group("matrix");
    g.sample_size(10);
    for n in [6u32, 7] {
        let x = shifted_sierpinski(n);
        for (mode, run) in modes() {
            g.bench_with_input(BenchmarkId::new(format!("square/{mode}"), n), &x, |b, x| {
                b.iter(|| run(&mut || drop(black_box(x.mul(x).unwrap()))))
            });
            g.bench_with_input(BenchmarkId::new(format!("rank_ladder/{mode}"), n), &x, |b, x| {
                b.iter(|| run(&mut || drop(black_box(rank_ladder(x).unwrap()))))
            });
        }
    }
    g.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    let req = SweepRequest::random(60, DEFAULT_SEED, vec![2, 3], vec![0, 1, 2], Q);
    for (mode, run) in modes() {
        g.bench_function(format!("random60/{mode}"), |b| {
            b.iter(|| run(&mut || drop(black_box(verify_sweep(&req).unwrap()))))
        });
    }
    g.finish();
}

fn bench_lefschetz(c: &mut Criterion) {
    let mut g = c.benchmark_group("lefschetz");
    g.sample_size(10);
    let d = MciDescriptor::new(vec![3, 2, 2, 1], Q).unwrap();
    let l = AlgebraElement::variable_sum(&d);
    for (mode, run) in modes() {
        g.bench_function(format!("strong_3221/{mode}"), |b| {
            b.iter(|| run(&mut || drop(black_box(strong_lefschetz_check(&d, &l).unwrap()))))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_matrix, bench_sweep, bench_lefschetz);
criterion_main!(benches);
