//! Foucault-mode (eddy current) part of the pressure.
//!
//! For small `gamma` the TE spectral weight near `omega ~ gamma` has a finite
//! limit that is absent from the plasma prescription. It is isolated by
//! integrating `2 Re p_TE` on the real axis up to `omega_cut = sqrt(gamma
//! omega_next)`, well between `gamma` and the next frequency scale.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{CasimirError, Result};
use crate::modes::gamma_tilde;
use crate::numerics::{bracket_roots, log_quad, semi_infinite_quad_from, Decay, QuadOptions, SamplingPlan};
use crate::optics::{loop_function_imag, spectral_density, CavityConfig, MirrorResponse, Polarization};
use crate::pressure::{plasma_counterpart, ErrorSlot, MatsubaraGrid};
use crate::units::{AngularFrequency, C, K_B};

/// Foucault weight at one wavevector, normalized so that the total is
/// `int_0^inf value dk`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoucaultDensity {
    pub k: f64,
    /// Pa m / rad.
    pub value: f64,
    pub gamma_scale_used: f64,
    pub omega_cut: AngularFrequency,
}

/// Required ratio between `omega_next` and the scaled `gamma`.
pub const MIN_SCALE_SEPARATION: f64 = 10.0;

/// The first frequency above the Foucault band: `omega_m` for a magnetic
/// cavity, otherwise the smaller of `xi_1` and `c k`.
pub fn omega_next(cfg: &CavityConfig, k: f64) -> f64 {
    let magnetic = cfg
        .mirrors()
        .iter()
        .filter(|m| m.is_magnetic())
        .map(|m| m.omega_m.0)
        .fold(f64::INFINITY, f64::min);
    if magnetic.is_finite() {
        return magnetic;
    }
    let xi1 = MatsubaraGrid::new(cfg.temperature).map(|g| g.xi(1).0).unwrap_or(f64::INFINITY);
    xi1.min(C * k)
}

/// Relative `gamma` scale used when none is given: `1e-4` of the physical
/// value, lowered further for magnetic cavities so that `gamma` sits six
/// decades below `omega_m`.
pub fn default_gamma_scale(cfg: &CavityConfig) -> f64 {
    let g = cfg.max_gamma();
    if cfg.has_magnetic_mirror() && g > 0.0 {
        let wm = omega_next(cfg, f64::INFINITY);
        (1e-6 * wm / g).min(1e-4)
    } else {
        1e-4
    }
}

fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(CasimirError::InvalidParameter(format!("wavevector must be positive, got {k:e}")))
    }
}

fn scaled_config(cfg: &CavityConfig, gamma_scale: f64) -> Result<CavityConfig> {
    cfg.validate()?;
    if !(gamma_scale.is_finite() && gamma_scale > 0.0) {
        return Err(CasimirError::InvalidParameter(format!(
            "gamma scale must be positive, got {gamma_scale:e}"
        )));
    }
    for m in cfg.mirrors() {
        if !m.is_lossy() {
            return Err(CasimirError::Domain(format!("Foucault modes need lossy mirrors ({m})")));
        }
    }
    cfg.clone().with_gamma_scale(gamma_scale)
}

pub fn foucault_density(cfg: &CavityConfig, k: f64, gamma_scale: f64) -> Result<FoucaultDensity> {
    foucault_density_with_cut_factor(cfg, k, gamma_scale, 1.0)
}

/// As [`foucault_density`] with `omega_cut` multiplied by `cut_factor`.
pub fn foucault_density_with_cut_factor(
    cfg: &CavityConfig,
    k: f64,
    gamma_scale: f64,
    cut_factor: f64,
) -> Result<FoucaultDensity> {
    check_k(k)?;
    if !(cut_factor.is_finite() && cut_factor > 0.0) {
        return Err(CasimirError::InvalidParameter(format!(
            "cutoff factor must be positive, got {cut_factor:e}"
        )));
    }
    let scaled = scaled_config(cfg, gamma_scale)?;
    let gamma = scaled.max_gamma();
    let next = omega_next(&scaled, k);
    if gamma * MIN_SCALE_SEPARATION > next {
        return Err(CasimirError::ScaleSeparation { gamma, omega_next: next });
    }
    let omega_cut = cut_factor * (gamma * next).sqrt();
    let done = |value: f64| FoucaultDensity {
        k,
        value,
        gamma_scale_used: gamma_scale,
        omega_cut: AngularFrequency(omega_cut),
    };
    if scaled.response == MirrorResponse::Transparent || scaled.temperature == 0.0 {
        return Ok(done(0.0));
    }

    let mut breaks = vec![scaled.min_gamma(), gamma];
    for m in scaled.mirrors() {
        breaks.push(gamma_tilde(&m, k)?.0);
    }
    breaks.retain(|&w| w < omega_cut);
    let lo = 1e-6 * breaks.iter().copied().fold(omega_cut, f64::min);

    let slot = ErrorSlot::new();
    let integrand = |w: f64| {
        slot.guard(
            spectral_density(&scaled, k, Complex64::new(w, 0.0), Polarization::TE).map(|p| 2.0 * p.re / (2.0 * PI)),
        )
    };
    // The limit is of order k_B T k e^{-2kL}.
    let scale = K_B * scaled.temperature * k * (-2.0 * k * scaled.separation).exp();
    let opts = QuadOptions::new(0.01 * scaled.tol).abs_tol(1e-4 * scaled.tol * scale);
    let r = slot.resolve(log_quad(&integrand, lo, omega_cut, &breaks, &opts))?;
    Ok(done(k / (2.0 * PI) * r.value))
}

/// `gamma -> 0` limit of the density from the static reflection amplitudes:
/// `-k_B T (k / 2 pi) k [f_Drude(0) - f_plasma(0)]`.
pub fn foucault_density_limit(cfg: &CavityConfig, k: f64) -> Result<f64> {
    check_k(k)?;
    cfg.validate()?;
    let drude = loop_function_imag(cfg, k, 0.0, Polarization::TE)?;
    let plasma = loop_function_imag(&plasma_counterpart(cfg), k, 0.0, Polarization::TE)?;
    Ok(-K_B * cfg.temperature * k * k / (2.0 * PI) * (drude - plasma))
}

fn lowest_k(cfg: &CavityConfig, gamma_scale: f64) -> f64 {
    let gamma = cfg.max_gamma() * gamma_scale;
    if cfg.has_magnetic_mirror() {
        let wm = omega_next(cfg, f64::INFINITY);
        10.0 * (gamma * wm).sqrt() / C
    } else {
        (MIN_SCALE_SEPARATION * MIN_SCALE_SEPARATION) * gamma / C
    }
}

/// Foucault contribution to the pressure, Pa.
///
/// Wavevectors too small for the scale separation (`c k` within two decades
/// of `gamma`) are left out; their share vanishes like a power of `k`.
pub fn foucault_total(cfg: &CavityConfig, gamma_scale: f64) -> Result<f64> {
    scaled_config(cfg, gamma_scale)?;
    let l = cfg.separation;
    let k_min = lowest_k(cfg, gamma_scale);
    let slot = ErrorSlot::new();
    let integrand = |k: f64| slot.guard(foucault_density(cfg, k, gamma_scale).map(|d| d.value));
    let scale = K_B * cfg.temperature / (l * l * l);
    let opts = QuadOptions::new(0.1 * cfg.tol).abs_tol(1e-3 * cfg.tol * scale).parallel(true);
    let r = slot.resolve(semi_infinite_quad_from(
        &integrand,
        k_min,
        Some(2.0 / l),
        &opts,
        Decay::Exponential(2.0 * l),
    ))?;
    Ok(r.value)
}

/// `foucault_total` at each separation of an ascending grid.
pub fn foucault_distance_scan(cfg: &CavityConfig, separations: &[f64], gamma_scale: f64) -> Result<Vec<(f64, f64)>> {
    if separations.is_empty() {
        return Err(CasimirError::InvalidParameter("empty distance grid".into()));
    }
    if separations.iter().any(|&l| !(l.is_finite() && l > 0.0)) || separations.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CasimirError::InvalidParameter(
            "distance grid must be positive and strictly ascending".into(),
        ));
    }
    separations
        .par_iter()
        .map(|&l| {
            let c = cfg.clone().with_separation(l)?;
            foucault_total(&c, gamma_scale).map(|p| (l, p))
        })
        .collect()
}

/// Densities on a wavevector grid, evaluated in parallel.
pub fn foucault_density_grid(cfg: &CavityConfig, ks: &[f64], gamma_scale: f64) -> Result<Vec<FoucaultDensity>> {
    ks.par_iter().map(|&k| foucault_density(cfg, k, gamma_scale)).collect()
}

/// Wavevectors in `[k_lo, k_hi]` where the density changes sign.
pub fn foucault_sign_changes(cfg: &CavityConfig, k_lo: f64, k_hi: f64, gamma_scale: f64) -> Result<Vec<f64>> {
    check_k(k_lo)?;
    check_k(k_hi)?;
    let slot = ErrorSlot::new();
    let g = |k: f64| slot.guard(foucault_density(cfg, k, gamma_scale).map(|d| d.value));
    let roots = bracket_roots(g, k_lo, k_hi, SamplingPlan::Geometric(60), 1e-8);
    slot.resolve(Ok(roots))
}
