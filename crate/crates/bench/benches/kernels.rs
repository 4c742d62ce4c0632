use std::hint::black_box;

use casimir_core::foucault::default_gamma_scale;
use casimir_core::optics::{fresnel, spectral_density};
use casimir_core::pressure::matsubara_term;
use casimir_core::{
    foucault_density, mode_chart, pressure_lifshitz, pressure_matsubara, Material, Polarization,
};
use casimir_bench::cavity;
use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

fn kernels(c: &mut Criterion) {
    let ni = Material::ni();
    let cfg = cavity("au-ni");
    let z = Complex64::new(3e14, 1e12);
    c.bench_function("fresnel_te_ni", |b| {
        b.iter(|| fresnel(black_box(&ni), black_box(5e6), black_box(z), Polarization::TE))
    });
    c.bench_function("spectral_density_au_ni", |b| {
        b.iter(|| spectral_density(black_box(&cfg), black_box(5e6), black_box(z), Polarization::TM))
    });
    c.bench_function("matsubara_term_n10", |b| b.iter(|| matsubara_term(black_box(&cfg), black_box(10))));
}

fn engines(c: &mut Criterion) {
    let mut g = c.benchmark_group("pressure");
    g.sample_size(10);
    for setup in ["au-au", "au-ni"] {
        let cfg = cavity(setup);
        g.bench_function(format!("matsubara_{setup}"), |b| b.iter(|| pressure_matsubara(black_box(&cfg))));
        g.bench_function(format!("lifshitz_{setup}"), |b| b.iter(|| pressure_lifshitz(black_box(&cfg))));
    }
    g.finish();
}

fn modes(c: &mut Criterion) {
    let mut g = c.benchmark_group("modes");
    g.sample_size(10);
    let base = cavity("au-ni");
    let small = base.clone().with_gamma_scale(1e-3 * Material::ni().omega_m.0 / base.max_gamma()).unwrap();
    g.bench_function("mode_chart_au_ni", |b| b.iter(|| mode_chart(black_box(&small), black_box(4.7e6))));
    let scale = default_gamma_scale(&base);
    g.bench_function("foucault_density_au_ni", |b| {
        b.iter(|| foucault_density(black_box(&base), black_box(4.7e6), scale))
    });
    g.finish();
}

criterion_group!(benches, kernels, engines, modes);
criterion_main!(benches);
