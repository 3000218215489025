use std::hint::black_box;

use biphoton_core::estimation::experiment_rng;
use biphoton_core::{
    apply_mode_unitary, indistinguishability_unitary, mle, monte_carlo, outcome_distribution,
    output_state, probe_state, qfim_pure_numeric, sample_counts, PairCount, ParamPoint,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn mode_unitary(c: &mut Criterion) {
    let u = indistinguishability_unitary(0.4).unwrap();
    let mut group = c.benchmark_group("apply_mode_unitary");
    for n in [1, 2, 4] {
        let ket = probe_state(PairCount::new(n).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(2 * n), &ket, |b, ket| {
            b.iter(|| apply_mode_unitary(&u, black_box(ket)).unwrap())
        });
    }
    group.finish();
}

fn qfim(c: &mut Criterion) {
    let one = PairCount::new(1).unwrap();
    let p = ParamPoint::new(0.3, 1.1).unwrap();
    c.bench_function("qfim_pure_numeric/n=1", |b| {
        b.iter(|| qfim_pure_numeric(|q| output_state(one, q), black_box(p), 1e-5).unwrap())
    });
}

fn estimate(c: &mut Criterion) {
    let dist = outcome_distribution(ParamPoint::new(0.5, 0.7).unwrap());
    let counts = sample_counts(&dist, 750, &mut experiment_rng(1, 0)).unwrap();
    c.bench_function("mle/N=750", |b| b.iter(|| mle(black_box(&counts))));
    c.bench_function("sample_counts/N=750", |b| {
        let mut rng = experiment_rng(1, 1);
        b.iter(|| sample_counts(&dist, 750, &mut rng).unwrap())
    });
}

fn simulate(c: &mut Criterion) {
    let p = ParamPoint::new(0.5, 0.7).unwrap();
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(10);
    group.bench_function("N=750,M=1000", |b| {
        b.iter(|| monte_carlo(black_box(p), 750, 1000, 1).unwrap())
    });
    group.finish();
}

criterion_group!(benches, mode_unitary, qfim, estimate, simulate);
criterion_main!(benches);
