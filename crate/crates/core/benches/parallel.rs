//! Sequential vs rayon execution of the data-parallel kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pelwedge_core::cyclofield::CycloField;
use pelwedge_core::domains::ball_trials;
use pelwedge_core::exterior::compound_with;
use pelwedge_core::instances::{random_perfect_pair, random_rational_matrix, trial_rng};
use pelwedge_core::pairings::verify_prinz;
use pelwedge_core::par::Exec;
use pelwedge_core::ring::Rationals;
use pelwedge_core::serretate::verify_vdrei;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn compound(c: &mut Criterion) {
    let mut g = c.benchmark_group("compound_8x8_k4");
    let a = random_rational_matrix(8, &mut trial_rng(1, 0));
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| compound_with(&Rationals, black_box(&a), 4, exec).unwrap())
        });
    }
    g.finish();
}

fn vdrei(c: &mut Criterion) {
    let mut g = c.benchmark_group("vdrei_n7_k3");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_vdrei(7, 3, exec).unwrap())
        });
    }
    g.finish();
}

fn ball(c: &mut Criterion) {
    let mut g = c.benchmark_group("ball_trials_n6_k3_x1000");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| ball_trials(6, 3, 1000, 42, exec).unwrap())
        });
    }
    g.finish();
}

fn prinz(c: &mut Criterion) {
    let field = CycloField::new(5).unwrap();
    let pairs: Vec<_> = (0..16)
        .map(|t| random_perfect_pair(&field, 3, 7, &mut trial_rng(3, t)))
        .collect();
    let mut g = c.benchmark_group("prinz_16_pairs_n3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                exec.map(pairs.len(), |i| {
                    let (v0, v1) = &pairs[i];
                    (0..=3)
                        .map(|k| verify_prinz(v0, v1, k, 7).unwrap().outcome)
                        .collect::<Vec<_>>()
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, compound, vdrei, ball, prinz);
criterion_main!(benches);
