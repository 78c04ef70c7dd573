//! Propagator construction: the numerical spectral route against the
//! corrected closed form, and the cost of the discrepancy audit.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cavity_duet::{
    propagator_analytic, propagator_discrepancy, propagator_spectral, PropagatorForm,
};

fn bench_propagator(c: &mut Criterion) {
    let (n, r, tau) = (20usize, 0.8f64, 5.0f64);

    let mut group = c.benchmark_group("block-propagator");
    group.bench_function("spectral", |b| {
        b.iter(|| propagator_spectral(black_box(n), black_box(r), black_box(tau)).unwrap())
    });
    group.bench_function("analytic-corrected", |b| {
        b.iter(|| {
            propagator_analytic(
                black_box(n),
                black_box(r),
                black_box(tau),
                PropagatorForm::AnalyticCorrected,
            )
            .unwrap()
        })
    });
    group.bench_function("discrepancy-audit", |b| {
        b.iter(|| {
            propagator_discrepancy(
                black_box(n),
                black_box(r),
                black_box(tau),
                PropagatorForm::AnalyticCorrected,
            )
        })
    });
    group.finish();
}

criterion_group!(benches, bench_propagator);
criterion_main!(benches);
