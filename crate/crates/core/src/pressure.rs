//! Casimir pressure from the real-frequency integral and the Matsubara sum.

use std::f64::consts::PI;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{CasimirError, Result};
use crate::materials::{Material, MaterialKind};
use crate::numerics::{adaptive_quad_with, log_quad, semi_infinite_quad_from, Decay, QuadOptions, QuadratureResult};
use crate::optics::{
    loop_function_imag, loop_function_kz, spectral_density, thermal_factor, thermal_factor_complex, vacuum_kz,
    CavityConfig, MirrorResponse, Polarization,
};
use crate::units::{AngularFrequency, C, HBAR, K_B};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Pressure between ideal mirrors at zero temperature, `-pi^2 hbar c / (240 L^4)`.
pub fn ideal_pressure(separation: f64) -> f64 {
    -PI * PI * HBAR * C / (240.0 * separation.powi(4))
}

/// Matsubara frequencies `xi_n = 2 pi n k_B T / hbar` with the halved `n = 0` weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraGrid {
    pub temperature: f64,
}

impl MatsubaraGrid {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(CasimirError::InvalidParameter(format!(
                "Matsubara sum needs T > 0, got {temperature:e}"
            )));
        }
        Ok(MatsubaraGrid { temperature })
    }

    pub fn xi(&self, n: usize) -> AngularFrequency {
        AngularFrequency(2.0 * PI * n as f64 * K_B * self.temperature / HBAR)
    }

    pub fn weight(&self, n: usize) -> f64 {
        if n == 0 {
            0.5
        } else {
            1.0
        }
    }

    pub fn frequencies(&self, count: usize) -> Vec<AngularFrequency> {
        (0..count).map(|n| self.xi(n)).collect()
    }

    pub fn weights(&self, count: usize) -> Vec<f64> {
        (0..count).map(|n| self.weight(n)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PressureMethod {
    LifshitzIntegral,
    MatsubaraSum,
}

impl fmt::Display for PressureMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PressureMethod::LifshitzIntegral => "lifshitz",
            PressureMethod::MatsubaraSum => "matsubara",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    pub matsubara_terms: Option<usize>,
    /// Real frequency beyond which the integral runs along a vertical ray.
    pub omega_cutoff: Option<f64>,
    pub k_cutoff: Option<f64>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureResult {
    /// Pa; negative values are attractive.
    pub pressure: f64,
    pub method: PressureMethod,
    pub error_estimate: f64,
    pub diagnostics: Diagnostics,
}

/// Collects the first error raised inside a quadrature callback.
pub(crate) struct ErrorSlot(Mutex<Option<CasimirError>>);

impl ErrorSlot {
    pub(crate) fn new() -> Self {
        ErrorSlot(Mutex::new(None))
    }

    pub(crate) fn guard(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                let mut slot = self.0.lock().expect("error slot poisoned");
                slot.get_or_insert(e);
                f64::NAN
            }
        }
    }

    /// Prefers the stored callback error over the quadrature's own.
    pub(crate) fn resolve<T>(&self, r: Result<T>) -> Result<T> {
        if let Some(e) = self.0.lock().expect("error slot poisoned").take() {
            return Err(e);
        }
        r
    }
}

/// `kappa L` beyond which the k integrand is dropped.
pub const KAPPA_L_CUTOFF: f64 = 40.0;

fn kappa_tail_bound(kappa_end: f64, separation: f64) -> f64 {
    // int_K^inf kappa^2 e^{-2 kappa L} dkappa / (2 pi), with |f| <= e^{-2 kappa L} / (1 - e^{-2 K L}).
    let l = separation;
    let e = (-2.0 * kappa_end * l).exp();
    e * (kappa_end * kappa_end / (2.0 * l) + kappa_end / (2.0 * l * l) + 1.0 / (4.0 * l * l * l))
        / (2.0 * PI)
        / (1.0 - e)
}

/// `int_0^inf (k dk / 2 pi) kappa f(i xi)` for one polarization.
fn matsubara_k_integral(cfg: &CavityConfig, xi: f64, pol: Polarization) -> Result<QuadratureResult> {
    let l = cfg.separation;
    let kappa0 = xi / C;
    let slot = ErrorSlot::new();
    let integrand = |u: f64| {
        let kappa = kappa0 + u;
        let k = (u * (u + 2.0 * kappa0)).sqrt();
        slot.guard(loop_function_imag(cfg, k, xi, pol).map(|f| kappa * kappa * f / (2.0 * PI)))
    };
    let opts = QuadOptions::new(0.1 * cfg.tol).abs_tol(1e-4 * cfg.tol / l.powi(3));
    let span = KAPPA_L_CUTOFF / l;
    let mut r = slot.resolve(adaptive_quad_with(&integrand, 0.0, span, &[0.5 / l, 2.0 / l, 8.0 / l], &opts))?;
    r.abs_error_estimate += kappa_tail_bound(kappa0 + span, l);
    Ok(r)
}

fn matsubara_term_pol(cfg: &CavityConfig, grid: &MatsubaraGrid, n: usize, pol: Polarization) -> Result<QuadratureResult> {
    let scale = -2.0 * K_B * cfg.temperature * grid.weight(n);
    let r = matsubara_k_integral(cfg, grid.xi(n).0, pol)?;
    Ok(QuadratureResult {
        value: scale * r.value,
        abs_error_estimate: scale.abs() * r.abs_error_estimate,
        evaluations: r.evaluations,
    })
}

/// Contribution of one polarization to the `n`-th Matsubara term, Pa.
pub fn matsubara_term_polarized(cfg: &CavityConfig, n: usize, pol: Polarization) -> Result<f64> {
    let grid = MatsubaraGrid::new(cfg.temperature)?;
    cfg.validate()?;
    Ok(matsubara_term_pol(cfg, &grid, n, pol)?.value)
}

fn matsubara_term_full(cfg: &CavityConfig, grid: &MatsubaraGrid, n: usize) -> Result<QuadratureResult> {
    let te = matsubara_term_pol(cfg, grid, n, Polarization::TE)?;
    let tm = matsubara_term_pol(cfg, grid, n, Polarization::TM)?;
    Ok(te.combine(tm))
}

/// The `n`-th term of the Matsubara sum (both polarizations, weight included), Pa.
pub fn matsubara_term(cfg: &CavityConfig, n: usize) -> Result<f64> {
    let grid = MatsubaraGrid::new(cfg.temperature)?;
    cfg.validate()?;
    Ok(matsubara_term_full(cfg, &grid, n)?.value)
}

/// Upper limit on the number of Matsubara terms.
pub const MATSUBARA_MAX_TERMS: usize = 1 << 20;
const BATCH: usize = 16;

pub fn pressure_matsubara(cfg: &CavityConfig) -> Result<PressureResult> {
    pressure_matsubara_with_budget(cfg, MATSUBARA_MAX_TERMS)
}

/// Matsubara sum truncated once two consecutive terms fall below `tol`
/// relative to the partial sum; fails if `max_terms` is not enough.
pub fn pressure_matsubara_with_budget(cfg: &CavityConfig, max_terms: usize) -> Result<PressureResult> {
    cfg.validate()?;
    let grid = MatsubaraGrid::new(cfg.temperature)?;
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut evaluations = 0;
    let mut terms: Vec<f64> = Vec::new();
    let mut start = 0;
    while start < max_terms {
        let end = (start + BATCH).min(max_terms);
        let batch: Vec<Result<QuadratureResult>> =
            (start..end).into_par_iter().map(|n| matsubara_term_full(cfg, &grid, n)).collect();
        for r in batch {
            let r = r?;
            sum += r.value;
            err += r.abs_error_estimate;
            evaluations += r.evaluations;
            terms.push(r.value);
            let n = terms.len();
            if n >= 3 {
                let (prev, last) = (terms[n - 2], terms[n - 1]);
                let small = cfg.tol * sum.abs();
                if prev.abs() < small && last.abs() < small {
                    let q = if prev != 0.0 { (last / prev).abs().min(0.999) } else { 0.0 };
                    let tail = last.abs() * q / (1.0 - q);
                    return Ok(PressureResult {
                        pressure: sum,
                        method: PressureMethod::MatsubaraSum,
                        error_estimate: err + tail,
                        diagnostics: Diagnostics {
                            matsubara_terms: Some(n),
                            omega_cutoff: None,
                            k_cutoff: Some(KAPPA_L_CUTOFF / cfg.separation),
                            evaluations,
                        },
                    });
                }
            }
        }
        start = end;
    }
    Err(CasimirError::SeriesDivergence { terms: max_terms })
}

/// Whether the contour-deformed k_z route is valid at real `omega > 0`.
fn deformation_allowed(cfg: &CavityConfig, omega: f64) -> Result<bool> {
    let z = Complex64::new(omega, 0.0);
    for m in cfg.mirrors() {
        let em = m.permittivity(z)? * m.permeability(z)?;
        if em.im < 0.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn inner_options(cfg: &CavityConfig) -> QuadOptions {
    QuadOptions::new(1e-2 * cfg.tol).abs_tol(1e-3 * cfg.tol * HBAR / cfg.separation.powi(3))
}

/// `Re J(omega)` with `J = int_0^inf k dk hbar k_z f`, along `k_z = q + i t`.
pub fn inner_integral_deformed(cfg: &CavityConfig, omega: f64, pol: Polarization) -> Result<QuadratureResult> {
    let q = omega / C;
    let z = Complex64::new(omega, 0.0);
    let slot = ErrorSlot::new();
    let g = |t: f64| {
        let kz = Complex64::new(q, t);
        slot.guard(loop_function_kz(cfg, z, kz, pol).map(|f| HBAR * (kz * kz * f).im))
    };
    let l = cfg.separation;
    slot.resolve(semi_infinite_quad_from(&g, 0.0, Some(2.0 / l), &inner_options(cfg), Decay::Exponential(2.0 * l)))
}

/// `Re J(omega)` split into propagating (`0 < k_z < q`) and evanescent (`k_z = i kappa`) parts.
pub fn inner_integral_direct(cfg: &CavityConfig, omega: f64, pol: Polarization) -> Result<QuadratureResult> {
    let q = omega / C;
    let z = Complex64::new(omega, 0.0);
    let l = cfg.separation;
    let opts = inner_options(cfg);
    let slot = ErrorSlot::new();
    let prop = |kz: f64| {
        let kzc = Complex64::new(kz, 0.0);
        slot.guard(loop_function_kz(cfg, z, kzc, pol).map(|f| HBAR * kz * kz * f.re))
    };
    let ev = |kappa: f64| {
        let kzc = Complex64::new(0.0, kappa);
        slot.guard(loop_function_kz(cfg, z, kzc, pol).map(|f| -HBAR * kappa * kappa * f.im))
    };
    let a = slot.resolve(adaptive_quad_with(&prop, 0.0, q, &[], &opts))?;
    let b = slot.resolve(semi_infinite_quad_from(&ev, 0.0, Some(2.0 / l), &opts, Decay::Exponential(2.0 * l)))?;
    Ok(a.combine(b))
}

/// `Re J(omega)` using whichever route is valid at `omega`.
pub fn inner_integral(cfg: &CavityConfig, omega: f64, pol: Polarization) -> Result<QuadratureResult> {
    if deformation_allowed(cfg, omega)? {
        inner_integral_deformed(cfg, omega, pol)
    } else {
        inner_integral_direct(cfg, omega, pol)
    }
}

/// `J(omega)` for complex `omega` in the upper half-plane, integrated over real k.
fn inner_integral_complex(cfg: &CavityConfig, omega: Complex64, pol: Polarization) -> Result<(Complex64, usize)> {
    let l = cfg.separation;
    let opts = inner_options(cfg);
    let slot = ErrorSlot::new();
    let value = |k: f64| -> Result<Complex64> {
        let kz = vacuum_kz(k, omega);
        Ok(HBAR * k * kz * loop_function_kz(cfg, omega, kz, pol)?)
    };
    let kq = omega.re / C;
    let re = |k: f64| slot.guard(value(k).map(|v| v.re));
    let im = |k: f64| slot.guard(value(k).map(|v| v.im));
    let mut parts = [0.0; 2];
    let mut evals = 0;
    for (i, g) in [&re as &(dyn Fn(f64) -> f64 + Sync), &im].into_iter().enumerate() {
        let head = slot.resolve(adaptive_quad_with(&g, 0.0, kq, &[], &opts))?;
        let tail = slot.resolve(semi_infinite_quad_from(
            &g,
            kq,
            Some(kq + 2.0 / l),
            &opts,
            Decay::Exponential(2.0 * l),
        ))?;
        parts[i] = head.value + tail.value;
        evals += head.evaluations + tail.evaluations;
    }
    Ok((Complex64::new(parts[0], parts[1]), evals))
}

/// Lower edge of the excised interval around `omega = 0`.
pub fn excision_epsilon(cfg: &CavityConfig) -> f64 {
    let mut eps = cfg.min_gamma();
    for m in cfg.mirrors() {
        if m.is_magnetic() {
            eps = eps.min(m.omega_m.0);
        }
    }
    1e-4 * eps
}

/// Samples `Re p(omega)` against `Re p(-omega)` and fails on a mismatch.
pub fn check_parity(cfg: &CavityConfig) -> Result<f64> {
    let l = cfg.separation;
    let mut worst: f64 = 0.0;
    for &w in &[cfg.max_gamma(), 0.3 * C / l, 3.0 * C / l] {
        for &k in &[0.5 / l, 2.0 / l] {
            for pol in Polarization::ALL {
                let a = spectral_density(cfg, k, Complex64::new(w, 0.0), pol)?.re;
                let b = spectral_density(cfg, k, Complex64::new(-w, 0.0), pol)?.re;
                let scale = a.abs().max(b.abs());
                if scale > 0.0 {
                    worst = worst.max((a - b).abs() / scale);
                }
            }
        }
    }
    if worst > 1e-8 {
        return Err(CasimirError::Consistency(format!(
            "spectral density violates Re p(w) = Re p(-w) (relative mismatch {worst:e})"
        )));
    }
    Ok(worst)
}

fn frequency_breaks(cfg: &CavityConfig) -> Vec<f64> {
    let mut b = vec![C / cfg.separation];
    if cfg.temperature > 0.0 {
        b.push(K_B * cfg.temperature / HBAR);
        b.push(2.0 * PI * K_B * cfg.temperature / HBAR);
    }
    for m in cfg.mirrors() {
        b.push(m.gamma.0);
        b.push(m.omega_p.0);
        if m.is_magnetic() {
            b.push(m.omega_m.0);
            b.push(m.mu0 * m.omega_m.0);
        }
    }
    b.sort_by(|x, y| x.total_cmp(y));
    b
}

/// Real-frequency Lifshitz integral.
///
/// Below `omega_cutoff = 10 c / L` the integrand `C(omega) Re J(omega)` is
/// integrated on the real axis with an excised neighbourhood `[0, eps]`,
/// extrapolated to `eps -> 0` from two excision widths. Above it the
/// integral `Re int C J domega` is continued along the vertical ray
/// `omega_cutoff + i s`, where it decays like `exp(-2 s L / c)`.
pub fn pressure_lifshitz(cfg: &CavityConfig) -> Result<PressureResult> {
    cfg.validate()?;
    if cfg.response != MirrorResponse::Physical {
        return Err(CasimirError::InvalidParameter(
            "the real-frequency integral needs physical (lossy) mirrors".into(),
        ));
    }
    for m in cfg.mirrors() {
        if m.kind != MaterialKind::LossyDrude || m.gamma.0 <= 0.0 {
            return Err(CasimirError::InvalidParameter(format!(
                "the real-frequency integral needs gamma > 0 for both mirrors ({m})"
            )));
        }
    }
    check_parity(cfg)?;

    let l = cfg.separation;
    let t = cfg.temperature;
    let omega_cut = 10.0 * C / l;
    let eps1 = excision_epsilon(cfg);
    let eps2 = 0.1 * eps1;
    let prefactor = 1.0 / (2.0 * PI * PI);
    let p_scale = ideal_pressure(l).abs();
    let evaluations = AtomicUsize::new(0);

    let slot = ErrorSlot::new();
    let real_axis = |w: f64| {
        let r = (|| -> Result<f64> {
            let c = thermal_factor(w, t)?;
            let mut acc = 0.0;
            for pol in Polarization::ALL {
                let j = inner_integral(cfg, w, pol)?;
                evaluations.fetch_add(j.evaluations, Ordering::Relaxed);
                acc += j.value;
            }
            Ok(prefactor * c * acc)
        })();
        slot.guard(r)
    };
    let opts = QuadOptions::new(0.1 * cfg.tol)
        .abs_tol(0.05 * cfg.tol * p_scale)
        .max_intervals(20000)
        .parallel(true);
    let breaks = frequency_breaks(cfg);
    let main = slot.resolve(log_quad(&real_axis, eps1, omega_cut, &breaks, &opts))?;
    let sliver = slot.resolve(log_quad(&real_axis, eps2, eps1, &[], &opts.abs_tol(0.01 * cfg.tol * p_scale)))?;

    let ray = |s: f64| {
        let r = (|| -> Result<f64> {
            let w = Complex64::new(omega_cut, s);
            let c = thermal_factor_complex(w, t)?;
            let mut acc = Complex64::new(0.0, 0.0);
            for pol in Polarization::ALL {
                let (j, n) = inner_integral_complex(cfg, w, pol)?;
                evaluations.fetch_add(n, Ordering::Relaxed);
                acc += j;
            }
            Ok(prefactor * (I * c * acc).re)
        })();
        slot.guard(r)
    };
    let ray_opts = QuadOptions::new(0.1 * cfg.tol).abs_tol(0.05 * cfg.tol * p_scale).parallel(true);
    let high = slot.resolve(semi_infinite_quad_from(
        &ray,
        0.0,
        Some(2.0 * C / l),
        &ray_opts,
        Decay::Exponential(2.0 * l / C),
    ))?;

    let p1 = main.value + high.value;
    let p2 = p1 + sliver.value;
    // The integrand is bounded at the origin, so P(eps) = P0 + a eps + ...
    let richardson = (p2 - p1) * eps2 / (eps1 - eps2);
    let pressure = p2 + richardson;
    let error_estimate = main.abs_error_estimate + sliver.abs_error_estimate + high.abs_error_estimate + richardson.abs();
    Ok(PressureResult {
        pressure,
        method: PressureMethod::LifshitzIntegral,
        error_estimate,
        diagnostics: Diagnostics {
            matsubara_terms: None,
            omega_cutoff: Some(omega_cut),
            k_cutoff: None,
            evaluations: main.evaluations
                + sliver.evaluations
                + high.evaluations
                + evaluations.load(Ordering::Relaxed),
        },
    })
}

/// Matsubara pressure with both relaxation rates multiplied by each scale.
pub fn gamma_limit_scan(cfg: &CavityConfig, gamma_scales: &[f64]) -> Result<Vec<(f64, PressureResult)>> {
    if gamma_scales.is_empty() {
        return Err(CasimirError::InvalidParameter("empty gamma-scale list".into()));
    }
    for w in gamma_scales.windows(2) {
        if !(w[1] < w[0]) {
            return Err(CasimirError::InvalidParameter(format!(
                "gamma scales must be strictly decreasing ({:e} then {:e})",
                w[0], w[1]
            )));
        }
    }
    gamma_scales
        .iter()
        .map(|&s| {
            let scaled = cfg.with_gamma_scale(s)?;
            Ok((s, pressure_matsubara(&scaled)?))
        })
        .collect()
}

/// True when successive differences of a scan shrink monotonically.
pub fn is_cauchy(scan: &[(f64, PressureResult)]) -> bool {
    let diffs: Vec<f64> = scan.windows(2).map(|w| (w[1].1.pressure - w[0].1.pressure).abs()).collect();
    diffs.windows(2).all(|d| d[1] < d[0])
}

/// Cavity with both mirrors replaced by their plasma limits.
pub fn plasma_counterpart(cfg: &CavityConfig) -> CavityConfig {
    cfg.to_plasma()
}

/// Convenience for tests and the CLI: both mirrors of one material.
pub fn symmetric_cavity(m: Material, separation: f64, temperature: f64) -> Result<CavityConfig> {
    CavityConfig::new(m, m, separation, temperature)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cavity(a: Material, b: Material, l_nm: f64, t: f64) -> CavityConfig {
        CavityConfig::new(a, b, l_nm * 1e-9, t).unwrap()
    }

    #[test]
    fn grid_values() {
        let g = MatsubaraGrid::new(300.0).unwrap();
        assert!((g.xi(1).0 - 2.4677902551530605e14).abs() < 1e-15 * 2.4677902551530605e14);
        assert_eq!(g.xi(0).0, 0.0);
        assert_eq!(g.weights(3), vec![0.5, 1.0, 1.0]);
        let f = g.frequencies(5);
        assert!(f.windows(2).all(|w| w[1].0 > w[0].0));
        assert!(MatsubaraGrid::new(0.0).is_err());
    }

    #[test]
    fn ideal_oracle_value() {
        assert!((ideal_pressure(300e-9) - -0.16050935462317944).abs() < 1e-15);
    }

    #[test]
    fn zeroth_term_special_cases() {
        let (au, ni) = (Material::au(), Material::ni());
        let auau = cavity(au, au, 300.0, 300.0);
        assert_eq!(matsubara_term_polarized(&auau, 0, Polarization::TE).unwrap(), 0.0);
        let nini = cavity(ni, ni, 300.0, 300.0);
        assert!(matsubara_term_polarized(&nini, 0, Polarization::TE).unwrap() < 0.0);
        let plasma = auau.to_plasma();
        assert!(matsubara_term_polarized(&plasma, 0, Polarization::TE).unwrap() < 0.0);
    }

    #[test]
    fn zeroth_tm_term_is_ideal() {
        let au = Material::au();
        let cfg = cavity(au, au, 300.0, 300.0);
        let l = cfg.separation;
        // -(k_B T / 2) * int k^2 e^{-2kL}/(1 - e^{-2kL}) dk / pi = -k_B T zeta(3) / (8 pi L^3)
        let zeta3 = 1.2020569031595942;
        let want = -K_B * 300.0 * zeta3 / (8.0 * PI * l.powi(3));
        let got = matsubara_term_polarized(&cfg, 0, Polarization::TM).unwrap();
        assert!((got - want).abs() < 1e-8 * want.abs(), "{got} {want}");
    }

    #[test]
    fn high_terms_are_exponentially_small() {
        let au = Material::au();
        let cfg = cavity(au, au, 300.0, 300.0);
        let g = MatsubaraGrid::new(300.0).unwrap();
        let l = cfg.separation;
        for n in [20, 40] {
            let t = matsubara_term(&cfg, n).unwrap();
            let kappa0 = g.xi(n).0 / C;
            let bound = 2.0 * K_B * 300.0 * 2.0 * kappa_tail_bound(kappa0, l);
            assert!(t < 0.0 && t.abs() <= bound, "{n}: {t} vs {bound}");
        }
    }

    #[test]
    fn ideal_mirrors_at_low_temperature() {
        let au = Material::au();
        let cfg = cavity(au, au, 300.0, 30.0).with_response(MirrorResponse::Ideal);
        let r = pressure_matsubara(&cfg).unwrap();
        let want = ideal_pressure(300e-9);
        assert!((r.pressure - want).abs() < 0.02 * want.abs(), "{}", r.pressure);
        assert!(r.error_estimate >= 0.0 && r.diagnostics.matsubara_terms.unwrap() > 10);
    }

    #[test]
    fn budget_is_enforced() {
        let au = Material::au();
        let cfg = cavity(au, au, 300.0, 300.0);
        assert!(matches!(
            pressure_matsubara_with_budget(&cfg, 3),
            Err(CasimirError::SeriesDivergence { terms: 3 })
        ));
        assert!(pressure_matsubara(&cfg.clone()).is_ok());
    }

    #[test]
    fn matsubara_rejects_zero_temperature() {
        let au = Material::au();
        assert!(pressure_matsubara(&cavity(au, au, 300.0, 0.0)).unwrap_err().is_invalid_input());
    }

    #[test]
    fn lifshitz_rejects_lossless_mirrors() {
        let au = Material::au();
        let cfg = cavity(au, au, 300.0, 300.0).to_plasma();
        assert!(pressure_lifshitz(&cfg).unwrap_err().is_invalid_input());
        let ideal = cavity(au, au, 300.0, 300.0).with_response(MirrorResponse::Ideal);
        assert!(pressure_lifshitz(&ideal).is_err());
    }

    #[test]
    fn deformed_and_direct_routes_agree() {
        let (au, ni) = (Material::au(), Material::ni());
        for cfg in [cavity(au, au, 300.0, 300.0), cavity(au, ni, 300.0, 300.0), cavity(ni, ni, 300.0, 300.0)] {
            for &w in &[1e3, 1e10, 5e13, 3e14, 1e15, 4e15] {
                for pol in Polarization::ALL {
                    let a = inner_integral_deformed(&cfg, w, pol).unwrap().value;
                    let b = inner_integral_direct(&cfg, w, pol).unwrap().value;
                    let floor = 1e-9 * HBAR / cfg.separation.powi(3);
                    assert!((a - b).abs() <= 1e-6 * a.abs().max(b.abs()) + floor, "{w} {pol}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn parity_check_passes_for_presets() {
        let (au, ni) = (Material::au(), Material::ni());
        for cfg in [cavity(au, au, 300.0, 300.0), cavity(au, ni, 300.0, 300.0)] {
            assert!(check_parity(&cfg).unwrap() < 1e-10);
        }
    }

    #[test]
    fn gamma_scan_validates_and_keeps_identity_scale() {
        let au = Material::au();
        let cfg = cavity(au, au, 300.0, 300.0).with_tol(1e-5).unwrap();
        assert!(gamma_limit_scan(&cfg, &[]).is_err());
        assert!(gamma_limit_scan(&cfg, &[0.1, 1.0]).is_err());
        let scan = gamma_limit_scan(&cfg, &[1.0]).unwrap();
        assert_eq!(scan[0].1.pressure, pressure_matsubara(&cfg).unwrap().pressure);
    }
}
