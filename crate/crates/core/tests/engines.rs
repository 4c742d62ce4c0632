use casimir_core::pressure::{
    inner_integral_deformed, inner_integral_direct, pressure_lifshitz, pressure_matsubara, MATSUBARA_MAX_TERMS,
};
use casimir_core::{CavityConfig, Polarization};

const PAIRS: [&str; 3] = ["au-au", "au-ni", "ni-ni"];

#[test]
fn engines_agree_within_error_bars() {
    for l in [200e-9, 500e-9] {
        for pair in PAIRS {
            let cfg = CavityConfig::from_setup(pair, l, 300.0).unwrap();
            let a = pressure_matsubara(&cfg).unwrap();
            let b = pressure_lifshitz(&cfg).unwrap();
            let diff = (a.pressure - b.pressure).abs();
            let bars = a.error_estimate + b.error_estimate;
            assert!(diff <= bars, "{pair} L={l:e}: {} vs {} (bars {bars:e})", a.pressure, b.pressure);
            assert!(diff <= 1e-3 * a.pressure.abs());
        }
    }
}

#[test]
fn pressure_is_attractive_and_decreasing() {
    for pair in PAIRS {
        let mut previous = f64::INFINITY;
        for i in 1..=10 {
            let l = 100e-9 * i as f64;
            let cfg = CavityConfig::from_setup(pair, l, 300.0).unwrap();
            let p = pressure_matsubara(&cfg).unwrap().pressure;
            assert!(p < 0.0, "{pair} L={l:e}: {p}");
            assert!(p.abs() < previous, "{pair} L={l:e}: |P| not decreasing");
            previous = p.abs();
        }
    }
}

#[test]
fn diagnostics_are_reported() {
    let cfg = CavityConfig::from_setup("au-ni", 300e-9, 300.0).unwrap();
    let lm = pressure_matsubara(&cfg).unwrap();
    let terms = lm.diagnostics.matsubara_terms.unwrap();
    assert!(terms > 2 && terms < MATSUBARA_MAX_TERMS);
    let li = pressure_lifshitz(&cfg).unwrap();
    assert!(li.diagnostics.omega_cutoff.unwrap() > 0.0);
    assert!(li.error_estimate > 0.0);
}

#[test]
fn inner_routes_agree_across_frequencies() {
    let cfg = CavityConfig::from_setup("ni-ni", 300e-9, 300.0).unwrap();
    for omega in [1e8, 1e11, 1e13, 1e14, 1e15, 3e15] {
        for pol in Polarization::ALL {
            let a = inner_integral_deformed(&cfg, omega, pol).unwrap().value;
            let b = inner_integral_direct(&cfg, omega, pol).unwrap().value;
            let floor = 1e-9 * casimir_core::units::HBAR / 300e-9f64.powi(3);
            assert!((a - b).abs() <= 1e-6 * a.abs().max(b.abs()) + floor, "{omega:e} {pol}: {a:e} vs {b:e}");
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let cfg = CavityConfig::from_setup("au-ni", 300e-9, 300.0).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| (pressure_matsubara(&cfg).unwrap().pressure, pressure_lifshitz(&cfg).unwrap().pressure))
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.0.to_bits(), b.0.to_bits());
    assert_eq!(a.1.to_bits(), b.1.to_bits());
}
