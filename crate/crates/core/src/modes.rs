//! Low-frequency pole/zero structure of the TE spectral density.
//!
//! Frequencies on the imaginary axis are written `z = i y`. Between `-gamma`
//! and `-gamma_tilde` (and between `-omega_m_tilde` and `-omega_m` for
//! magnetic mirrors) the slab amplitudes have dense poles and zeros; these
//! regions are characterised only through winding numbers.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{CasimirError, Result};
use crate::materials::Material;
use crate::numerics::{bracket_roots, winding_number, RectContour, SamplingPlan, WindingOptions, WindingResult};
use crate::optics::{spectral_density_with, Amplitudes, CavityConfig, Polarization, TransverseWavevector};
use crate::units::{AngularFrequency, C};

const ROOT_TOL: f64 = 1e-14;

/// `K~^2(y) = k^2 + eps(iy) mu(iy) y^2 / c^2`, so that `K_z(iy) = i K~`.
pub fn k_tilde_squared(m: &Material, k: f64, y: f64) -> Result<f64> {
    let mu = m.permeability_imag(y)?;
    Ok(k * k + mu * (y * y + m.chi_y2_imag(y)?) / (C * C))
}

/// `mu(iy) kappa(y) - K~(y)`; its zeros are the TE reflection zeros.
/// Undefined (NaN) where `K~^2 < 0`.
pub fn te_zero_function(m: &Material, k: f64, y: f64) -> f64 {
    let (Ok(mu), Ok(big2)) = (m.permeability_imag(y), k_tilde_squared(m, k, y)) else {
        return f64::NAN;
    };
    if big2 < 0.0 {
        return f64::NAN;
    }
    mu * (k * k + y * y / (C * C)).sqrt() - big2.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KzZeros {
    /// `K_z` vanishes at `z = -i gamma_tilde`.
    pub gamma_tilde: AngularFrequency,
    /// `K_z` vanishes at `z = -i omega_m_tilde`; absent for non-magnetic media.
    pub omega_m_tilde: Option<AngularFrequency>,
}

fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(CasimirError::InvalidParameter(format!("wavevector must be positive, got {k:e}")))
    }
}

/// `gamma_tilde`: the zero of `K~^2` closest to the origin on the negative axis.
pub fn gamma_tilde(m: &Material, k: f64) -> Result<AngularFrequency> {
    check_k(k)?;
    if !m.is_lossy() {
        return Err(CasimirError::Domain(format!("gamma_tilde needs a lossy material ({m})")));
    }
    let mut edge = m.gamma.0;
    if m.is_magnetic() {
        edge = edge.min(m.omega_m.0);
    }
    let g = |y: f64| k_tilde_squared(m, k, y).unwrap_or(f64::NAN);
    let roots = bracket_roots(g, -edge, 0.0, SamplingPlan::ClusteredEnds(400), ROOT_TOL);
    roots
        .last()
        .map(|&y| AngularFrequency(-y))
        .ok_or_else(|| CasimirError::BracketFailure {
            what: "gamma_tilde",
            lo: -edge,
            hi: 0.0,
            f_lo: f64::NAN,
            f_hi: k * k,
        })
}

fn omega_m_tilde(m: &Material, k: f64) -> Result<AngularFrequency> {
    let wm = m.omega_m.0;
    if m.gamma.0 >= wm {
        return Err(CasimirError::Domain(format!(
            "omega_m_tilde is charted only for gamma < omega_m ({m})"
        )));
    }
    let g = |y: f64| k_tilde_squared(m, k, y).unwrap_or(f64::NAN);
    let mut far = 10.0 * m.mu0 * wm;
    while g(-far) <= 0.0 {
        far *= 10.0;
        if far > 1e30 {
            return Err(CasimirError::BracketFailure {
                what: "omega_m_tilde",
                lo: -far,
                hi: -wm,
                f_lo: g(-far),
                f_hi: f64::NEG_INFINITY,
            });
        }
    }
    let roots = bracket_roots(g, -far, -wm, SamplingPlan::ClusteredEnds(400), ROOT_TOL);
    roots
        .last()
        .map(|&y| AngularFrequency(-y))
        .ok_or_else(|| CasimirError::BracketFailure {
            what: "omega_m_tilde",
            lo: -far,
            hi: -wm,
            f_lo: g(-far),
            f_hi: f64::NEG_INFINITY,
        })
}

/// Zeros of `K_z` on the negative imaginary axis.
pub fn kz_zero_points(m: &Material, k: f64) -> Result<KzZeros> {
    let gamma_tilde = gamma_tilde(m, k)?;
    let omega_m_tilde = if m.is_magnetic() { Some(omega_m_tilde(m, k)?) } else { None };
    Ok(KzZeros {
        gamma_tilde,
        omega_m_tilde,
    })
}

/// Small-`gamma` form of `gamma_tilde`: `gamma k^2 c^2 / (k^2 c^2 + mu0 omega_p^2)`.
pub fn gamma_tilde_asymptotic(m: &Material, k: f64) -> f64 {
    let kc2 = (k * C).powi(2);
    m.gamma.0 * kc2 / (kc2 + m.mu0 * m.omega_p.0 * m.omega_p.0)
}

/// Small-`gamma` form of `omega_m_tilde`: `omega_m (k^2 c^2 + mu0 omega_p^2) / (k^2 c^2 + omega_p^2)`.
pub fn omega_m_tilde_asymptotic(m: &Material, k: f64) -> f64 {
    let kc2 = (k * C).powi(2);
    let wp2 = m.omega_p.0 * m.omega_p.0;
    m.omega_m.0 * (kc2 + m.mu0 * wp2) / (kc2 + wp2)
}

/// Wavevector at which the static plasma TE amplitude vanishes,
/// `k0 = sqrt(mu0) omega_p / (c sqrt(mu0^2 - 1))`.
pub fn critical_wavevector(m: &Material) -> Result<TransverseWavevector> {
    if !m.is_magnetic() {
        return Err(CasimirError::Domain(format!(
            "critical wavevector needs mu(0) > 1 (got {})",
            m.mu0
        )));
    }
    Ok(TransverseWavevector(
        m.mu0.sqrt() * m.omega_p.0 / (C * (m.mu0 * m.mu0 - 1.0).sqrt()),
    ))
}

/// Small-`gamma` position of the reflection zero that approaches the origin:
/// `-gamma / (1 - k0^2 / k^2)`.
pub fn xi0_asymptotic(gamma: f64, k: f64, k0: f64) -> f64 {
    -gamma / (1.0 - (k0 / k).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeZeros {
    /// In `(-omega_m, -gamma)`.
    pub xi0_minus: f64,
    /// Positive.
    pub xi0_plus: f64,
}

/// The two zeros of the TE amplitude of a magnetic Drude mirror on the
/// imaginary axis, for `gamma < omega_m`.
pub fn te_zeros_imag_axis(m: &Material, k: f64) -> Result<TeZeros> {
    check_k(k)?;
    let (gamma, wm) = (m.gamma.0, m.omega_m.0);
    if !(m.is_magnetic() && m.is_lossy() && gamma < wm) {
        return Err(CasimirError::Domain(format!(
            "TE zeros are charted for magnetic Drude mirrors with gamma < omega_m ({m})"
        )));
    }
    let g = |y: f64| te_zero_function(m, k, y);
    let minus = bracket_roots(g, -wm, -gamma, SamplingPlan::ClusteredEnds(600), ROOT_TOL);
    let xi0_minus = *minus.last().ok_or(CasimirError::BracketFailure {
        what: "xi0_minus",
        lo: -wm,
        hi: -gamma,
        f_lo: g(-wm * (1.0 - 1e-9)),
        f_hi: g(-gamma * (1.0 + 1e-9)),
    })?;
    let mut top = 1e3 * wm;
    while !(g(top) < 0.0) {
        top *= 10.0;
        if top > 1e30 {
            return Err(CasimirError::BracketFailure {
                what: "xi0_plus",
                lo: 0.0,
                hi: top,
                f_lo: g(0.0),
                f_hi: g(top),
            });
        }
    }
    let lo = 1e-9 * gamma;
    let plus = bracket_roots(g, lo, top, SamplingPlan::Geometric(2000), ROOT_TOL);
    let xi0_plus = *plus.first().ok_or(CasimirError::BracketFailure {
        what: "xi0_plus",
        lo,
        hi: top,
        f_lo: g(lo),
        f_hi: g(top),
    })?;
    Ok(TeZeros { xi0_minus, xi0_plus })
}

/// The isolated TE pole below `-omega_m_tilde`, where `mu kappa + K~ = 0`
/// (`mu(iy) < 0` there). Returned as a negative `y`.
pub fn te_pole_below_magnetic(m: &Material, k: f64) -> Result<f64> {
    let wt = omega_m_tilde(m, k)?.0;
    let f = |y: f64| {
        let (Ok(mu), Ok(big2)) = (m.permeability_imag(y), k_tilde_squared(m, k, y)) else {
            return f64::NAN;
        };
        mu * (k * k + y * y / (C * C)).sqrt() + big2.max(0.0).sqrt()
    };
    let mut far = 10.0 * wt;
    while !(f(-far) > 0.0) {
        far *= 10.0;
        if far > 1e30 {
            return Err(CasimirError::BracketFailure {
                what: "magnetic TE pole",
                lo: -far,
                hi: -wt,
                f_lo: f(-far),
                f_hi: f(-wt),
            });
        }
    }
    let mut roots = bracket_roots(f, -far, -wt, SamplingPlan::ClusteredEnds(600), ROOT_TOL);
    if roots.is_empty() {
        // At small k the pole hugs -omega_m_tilde closer than the scan resolves.
        roots = bracket_roots(f, -wt * (1.0 + 1e-11), -wt, SamplingPlan::Linear(2), ROOT_TOL);
    }
    roots.last().copied().ok_or(CasimirError::BracketFailure {
        what: "magnetic TE pole",
        lo: -far,
        hi: -wt,
        f_lo: f(-far),
        f_hi: f(-wt),
    })
}

/// Inventory of the TE mode structure at one wavevector.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeChart {
    pub k: TransverseWavevector,
    /// Smallest `gamma_tilde` of the two mirrors.
    pub gamma_tilde: AngularFrequency,
    pub omega_m_tilde: Option<AngularFrequency>,
    pub xi0_minus: Option<f64>,
    pub xi0_plus: Option<f64>,
    /// Isolated TE pole below `-omega_m_tilde` (negative `y`).
    pub magnetic_pole: Option<f64>,
    /// Keys: `foucault`, `magnetic`, `xi0-`, `xi0+`, `S-`, `S+`.
    pub windings: BTreeMap<String, i64>,
    pub residuals: BTreeMap<String, f64>,
    pub contours: BTreeMap<String, RectContour>,
    pub slab_d: f64,
}

impl ModeChart {
    pub fn winding(&self, region: &str) -> Option<i64> {
        self.windings.get(region).copied()
    }
}

/// Rectangles used for the winding numbers, keyed like [`ModeChart::windings`].
fn chart_contours(
    cfg: &CavityConfig,
    gamma_tilde_min: f64,
    omega_m: Option<f64>,
    omega_m_tilde: Option<f64>,
    magnetic_pole: Option<f64>,
    zeros: Option<TeZeros>,
) -> Result<Vec<(String, RectContour)>> {
    let g_max = cfg.max_gamma();
    let mut out = Vec::new();

    // Nearest feature below -gamma_max.
    let mut below = -2.0 * g_max;
    if let Some(z) = zeros.filter(|z| z.xi0_minus < -g_max) {
        below = below.max(z.xi0_minus);
    }
    if let Some(wm) = omega_m {
        below = below.max(-wm);
    }
    let bottom = 0.5 * (-g_max + below);
    out.push((
        "foucault".to_string(),
        RectContour::centered_on_imag_axis(0.25 * g_max, bottom, -0.5 * gamma_tilde_min)?,
    ));

    if let (Some(wm), Some(wt)) = (omega_m, omega_m_tilde) {
        let bottom = 1.25 * magnetic_pole.unwrap_or(-wt).min(-wt);
        // Nearest feature above -omega_m.
        let above = zeros.map(|z| z.xi0_minus).unwrap_or(-g_max).min(-g_max);
        out.push((
            "magnetic".to_string(),
            RectContour::centered_on_imag_axis(0.25 * wm, bottom, 0.5 * (-wm + above))?,
        ));
    }

    if let Some(z) = zeros {
        let mut features = vec![0.0, -g_max, -cfg.min_gamma(), -gamma_tilde_min];
        if let Some(wm) = omega_m {
            features.push(-wm);
        }
        if let Some(wt) = omega_m_tilde {
            features.push(-wt);
        }
        for (name, x, other) in [("xi0-", z.xi0_minus, z.xi0_plus), ("xi0+", z.xi0_plus, z.xi0_minus)] {
            let dist = features
                .iter()
                .chain(std::iter::once(&other))
                .map(|f| (x - f).abs())
                .fold(f64::INFINITY, f64::min);
            let r = 0.3 * dist;
            out.push((name.to_string(), RectContour::new(-r, r, x - r, x + r)?));
        }
    }
    Ok(out)
}

/// Charts the TE structure for wavevector `k`, with slab mirrors of
/// thickness `cfg.slab_thickness()` inside the winding computations.
pub fn mode_chart(cfg: &CavityConfig, k: f64) -> Result<ModeChart> {
    cfg.validate()?;
    check_k(k)?;
    for m in cfg.mirrors() {
        if !m.is_lossy() {
            return Err(CasimirError::Domain(format!("mode charts need lossy mirrors ({m})")));
        }
        if m.is_magnetic() && m.gamma.0 >= m.omega_m.0 {
            return Err(CasimirError::Domain(format!(
                "magnetic mode charts need gamma < omega_m ({m})"
            )));
        }
    }
    let g_tilde = cfg
        .mirrors()
        .iter()
        .map(|m| gamma_tilde(m, k).map(|g| g.0))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let magnetic = cfg.mirrors().into_iter().find(|m| m.is_magnetic());
    let (omega_m, omega_m_tilde, pole, zeros) = match magnetic {
        Some(m) => (
            Some(m.omega_m.0),
            Some(omega_m_tilde(&m, k)?.0),
            Some(te_pole_below_magnetic(&m, k)?),
            Some(te_zeros_imag_axis(&m, k)?),
        ),
        None => (None, None, None, None),
    };
    let contours = chart_contours(cfg, g_tilde, omega_m, omega_m_tilde, pole, zeros)?;

    let d = cfg.slab_thickness();
    let h = |z: Complex64| {
        spectral_density_with(cfg, k, z, Polarization::TE, Amplitudes::Slab { thickness: d })
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    };
    let mut hot = vec![-cfg.max_gamma(), -cfg.min_gamma(), -g_tilde];
    hot.extend(omega_m.map(|w| -w));
    hot.extend(omega_m_tilde.map(|w| -w));
    hot.extend(pole);
    let opts = WindingOptions {
        hot_spots: hot,
        ..WindingOptions::default()
    };
    let results: Vec<(String, RectContour, Result<WindingResult>)> = contours
        .into_par_iter()
        .map(|(name, rect)| {
            let r = winding_number(h, &rect, &opts);
            (name, rect, r)
        })
        .collect();

    let mut windings = BTreeMap::new();
    let mut residuals = BTreeMap::new();
    let mut rects = BTreeMap::new();
    for (name, rect, r) in results {
        let r = r?;
        windings.insert(name.clone(), r.n);
        residuals.insert(name.clone(), r.residual());
        rects.insert(name, rect);
    }
    if let Some(&nf) = windings.get("foucault") {
        for (set, zero) in [("S-", "xi0-"), ("S+", "xi0+")] {
            if let Some(&nz) = windings.get(zero) {
                windings.insert(set.to_string(), nf + nz);
            }
        }
    }
    Ok(ModeChart {
        k: TransverseWavevector(k),
        gamma_tilde: AngularFrequency(g_tilde),
        omega_m_tilde: omega_m_tilde.map(AngularFrequency),
        xi0_minus: zeros.map(|z| z.xi0_minus),
        xi0_plus: zeros.map(|z| z.xi0_plus),
        magnetic_pole: pole,
        windings,
        residuals,
        contours: rects,
        slab_d: d,
    })
}
