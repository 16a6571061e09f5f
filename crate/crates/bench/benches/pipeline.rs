use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ergoswitch_core::ergotropy::{daemonic_value_qubit_control, ergotropy};
use ergoswitch_core::qmat::eig_hermitian;
use ergoswitch_core::qmat::rand_states::{random_density, random_hermitian};
use ergoswitch_core::scenarios::{product_input, purified_input, switched_pin_maps};
use ergoswitch_core::thermo::Hamiltonian;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn bench_eig(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_hermitian");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for dim in [2usize, 4, 8, 16] {
        let m = random_hermitian(&mut rng, dim);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &m, |b, m| {
            b.iter(|| eig_hermitian(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn bench_switch_apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("switch_apply");
    for n in [2usize, 3, 4, 5] {
        let sc = switched_pin_maps(0.7, n).unwrap();
        let joint = product_input(1.9, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(), |b, _| {
            b.iter(|| sc.apply(black_box(&joint)).unwrap())
        });
    }
    group.finish();
}

fn bench_switch_completeness(c: &mut Criterion) {
    let mut group = c.benchmark_group("switch_kraus_completeness");
    group.sample_size(20);
    for n in [2usize, 4] {
        let sc = switched_pin_maps(0.7, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(), |b, _| {
            b.iter(|| black_box(sc.completeness_residual()))
        });
    }
    group.finish();
}

fn bench_daemonic(c: &mut Criterion) {
    let h = Hamiltonian::qubit();
    let sc = switched_pin_maps(1.0, 2).unwrap();
    let joint = purified_input(1.5, 0.3, 0.9).unwrap();
    let out = sc.apply(&joint).unwrap();
    c.bench_function("daemonic_measurement_optimization", |b| {
        b.iter(|| daemonic_value_qubit_control(black_box(&out), 2, &h).unwrap())
    });
}

fn bench_ergotropy(c: &mut Criterion) {
    let h = Hamiltonian::qubit().sum_with(&Hamiltonian::qubit());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rho = random_density(&mut rng, 4);
    c.bench_function("ergotropy_two_qubits", |b| {
        b.iter(|| ergotropy(black_box(&rho), &h).unwrap())
    });
}

criterion_group!(
    benches,
    bench_eig,
    bench_switch_apply,
    bench_switch_completeness,
    bench_daemonic,
    bench_ergotropy
);
criterion_main!(benches);
