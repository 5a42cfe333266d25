use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ptmcom_core::model::{build_linearized, solve_steady_states, SystemParams};
use ptmcom_core::numerics::{char_poly, eigenvalues_general, routh_hurwitz_stable, solve_lyapunov, Matrix};
use ptmcom_core::{all_channels, run_sweep_1d, Parameter, SweepAxis, SweepQuantity};

fn entangled_point() -> SystemParams {
    SystemParams { kappa_c: 0.02, ..Default::default() }
}

fn random_stable_8x8(seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = Matrix::from_fn(8, 8, |_, _| rng.gen_range(-1.0..1.0));
    let mut m = raw.clone();
    for i in 0..8 {
        let row: f64 = (0..8).map(|j| raw[(i, j)].abs()).sum();
        m[(i, i)] -= row + 1e-3;
    }
    m
}

fn bench_numerics(c: &mut Criterion) {
    let m = random_stable_8x8(7);
    c.bench_function("eigenvalues_8x8", |b| {
        b.iter(|| eigenvalues_general(black_box(&m)).unwrap())
    });
    let d = Matrix::identity(8);
    c.bench_function("lyapunov_solve_8x8", |b| {
        b.iter(|| solve_lyapunov(black_box(&m), black_box(&d)).unwrap())
    });
    c.bench_function("routh_hurwitz_8", |b| {
        b.iter(|| routh_hurwitz_stable(&char_poly(black_box(&m)).unwrap()).unwrap())
    });
}

fn bench_model(c: &mut Criterion) {
    let p = entangled_point();
    c.bench_function("steady_states", |b| b.iter(|| solve_steady_states(black_box(&p)).unwrap()));
    let ss = solve_steady_states(&p).unwrap().remove(0);
    c.bench_function("build_linearized", |b| {
        b.iter(|| build_linearized(black_box(&p), black_box(&ss)).unwrap())
    });
    c.bench_function("all_channels_point", |b| b.iter(|| all_channels(black_box(&p)).unwrap()));
}

fn bench_sweep_row(c: &mut Criterion) {
    let p = entangled_point();
    let axis = SweepAxis::new(Parameter::J1, 0.2, 1.4, 32);
    c.bench_function("sweep_row_32_channels", |b| {
        b.iter(|| run_sweep_1d(black_box(&p), black_box(&axis), SweepQuantity::Channels).unwrap())
    });
}

criterion_group!(benches, bench_numerics, bench_model, bench_sweep_row);
criterion_main!(benches);
