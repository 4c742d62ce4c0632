//! Wavenumbers, reflection amplitudes and the cavity spectral density.

use std::fmt;

use num_complex::Complex64;

use crate::error::{CasimirError, Result};
use crate::materials::Material;
use crate::units::{C, HBAR, K_B};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    TE,
    TM,
}

impl Polarization {
    pub const ALL: [Polarization; 2] = [Polarization::TE, Polarization::TM];
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::TE => "TE",
            Polarization::TM => "TM",
        })
    }
}

/// Magnitude of the in-plane wavevector, rad/m.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct TransverseWavevector(pub f64);

impl TransverseWavevector {
    pub fn new(k: f64) -> Result<Self> {
        if k.is_finite() && k >= 0.0 {
            Ok(TransverseWavevector(k))
        } else {
            Err(CasimirError::InvalidParameter(format!("wavevector must be >= 0, got {k:e}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// How the mirrors reflect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MirrorResponse {
    /// Fresnel amplitudes of the configured materials.
    #[default]
    Physical,
    /// Perfect mirrors, `r1 r2 = 1` in both polarizations.
    Ideal,
    /// No reflection at all.
    Transparent,
}

/// Semi-infinite mirrors or slabs of finite thickness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Amplitudes {
    SemiInfinite,
    Slab { thickness: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    pub mirror1: Material,
    pub mirror2: Material,
    /// Mirror separation in m.
    pub separation: f64,
    /// Temperature in K.
    pub temperature: f64,
    /// Slab thickness over separation, used for mode charts.
    pub slab_factor: f64,
    pub tol: f64,
    pub response: MirrorResponse,
}

impl CavityConfig {
    pub const DEFAULT_TOL: f64 = 1e-6;
    pub const DEFAULT_SLAB_FACTOR: f64 = 10.0;

    pub fn new(mirror1: Material, mirror2: Material, separation: f64, temperature: f64) -> Result<Self> {
        let cfg = CavityConfig {
            mirror1,
            mirror2,
            separation,
            temperature,
            slab_factor: Self::DEFAULT_SLAB_FACTOR,
            tol: Self::DEFAULT_TOL,
            response: MirrorResponse::Physical,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Builds a cavity from a setup name such as `"au-ni"`.
    pub fn from_setup(setup: &str, separation: f64, temperature: f64) -> Result<Self> {
        let (a, b) = setup
            .split_once('-')
            .ok_or_else(|| CasimirError::InvalidParameter(format!("setup must look like 'au-ni', got '{setup}'")))?;
        Self::new(Material::from_preset(a)?, Material::from_preset(b)?, separation, temperature)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(CasimirError::InvalidParameter(msg));
        if !(self.separation.is_finite() && self.separation > 0.0) {
            return fail(format!("separation must be positive, got {:e}", self.separation));
        }
        if !(self.temperature.is_finite() && self.temperature >= 0.0) {
            return fail(format!("temperature must be >= 0, got {:e}", self.temperature));
        }
        if !(self.slab_factor.is_finite() && self.slab_factor >= 1.0) {
            return fail(format!("slab factor must be >= 1, got {:e}", self.slab_factor));
        }
        if !(self.tol > 0.0 && self.tol < 1e-2) {
            return fail(format!("tolerance must lie in (0, 1e-2), got {:e}", self.tol));
        }
        Ok(())
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        self.tol = tol;
        self.validate().map(|_| self)
    }

    pub fn with_slab_factor(mut self, slab_factor: f64) -> Result<Self> {
        self.slab_factor = slab_factor;
        self.validate().map(|_| self)
    }

    pub fn with_separation(mut self, separation: f64) -> Result<Self> {
        self.separation = separation;
        self.validate().map(|_| self)
    }

    pub fn with_response(mut self, response: MirrorResponse) -> Self {
        self.response = response;
        self
    }

    /// Both relaxation rates multiplied by `scale`.
    pub fn with_gamma_scale(mut self, scale: f64) -> Result<Self> {
        self.mirror1 = self.mirror1.with_gamma_scale(scale)?;
        self.mirror2 = self.mirror2.with_gamma_scale(scale)?;
        Ok(self)
    }

    /// Both mirrors replaced by their lossless counterparts.
    pub fn to_plasma(mut self) -> Self {
        self.mirror1 = self.mirror1.to_plasma();
        self.mirror2 = self.mirror2.to_plasma();
        self
    }

    pub fn mirrors(&self) -> [Material; 2] {
        [self.mirror1, self.mirror2]
    }

    pub fn slab_thickness(&self) -> f64 {
        self.slab_factor * self.separation
    }

    pub fn has_magnetic_mirror(&self) -> bool {
        self.mirror1.is_magnetic() || self.mirror2.is_magnetic()
    }

    pub fn max_gamma(&self) -> f64 {
        self.mirror1.gamma.0.max(self.mirror2.gamma.0)
    }

    pub fn min_gamma(&self) -> f64 {
        self.mirror1.gamma.0.min(self.mirror2.gamma.0)
    }
}

/// Square root with `Im >= 0`; on the cut (positive reals) the sign follows
/// `Re z`, the limit from the upper half-plane.
pub fn branch_sqrt(w: Complex64, z: Complex64) -> Complex64 {
    let s = w.sqrt();
    if s.im > 0.0 {
        s
    } else if s.im < 0.0 {
        -s
    } else if z.re < 0.0 {
        Complex64::new(-s.re.abs(), 0.0)
    } else {
        Complex64::new(s.re.abs(), 0.0)
    }
}

/// Vacuum axial wavenumber `k_z = sqrt(z^2/c^2 - k^2)`.
pub fn vacuum_kz(k: f64, z: Complex64) -> Complex64 {
    branch_sqrt(z * z / (C * C) - k * k, z)
}

/// Medium response at `z` needed by the amplitudes.
#[derive(Debug, Clone, Copy)]
struct Response {
    eps: Complex64,
    mu: Complex64,
    /// `(eps mu - 1) z^2 / c^2`.
    excess: Complex64,
}

fn response(m: &Material, z: Complex64) -> Result<Response> {
    let eps = m.permittivity(z)?;
    let mu = m.permeability(z)?;
    let a = z * z / (C * C);
    let excess = (mu - 1.0) * a + mu * m.susceptibility_times_z2(z)? / (C * C);
    Ok(Response { eps, mu, excess })
}

fn te_from(mu: Complex64, kz: Complex64, big_kz: Complex64, excess: Complex64) -> Result<Complex64> {
    // mu k_z - K_z = (mu^2 k_z^2 - K_z^2) / (mu k_z + K_z), free of cancellation.
    let den = mu * kz + big_kz;
    if den == Complex64::new(0.0, 0.0) {
        return Err(CasimirError::DegenerateDenominator {
            what: "TE Fresnel amplitude",
            at: kz,
        });
    }
    let num = (mu * mu - 1.0) * kz * kz - excess;
    Ok(num / (den * den))
}

fn tm_from(eps: Complex64, kz: Complex64, big_kz: Complex64) -> Result<Complex64> {
    let den = eps * kz + big_kz;
    if den == Complex64::new(0.0, 0.0) {
        return Err(CasimirError::DegenerateDenominator {
            what: "TM Fresnel amplitude",
            at: kz,
        });
    }
    Ok((eps * kz - big_kz) / den)
}

/// Fresnel amplitude from explicit `(eps, mu, k_z, K_z)`.
pub fn fresnel_parts(eps: Complex64, mu: Complex64, kz: Complex64, big_kz: Complex64, pol: Polarization) -> Result<Complex64> {
    let r = match pol {
        Polarization::TE => (mu * kz - big_kz) / (mu * kz + big_kz),
        Polarization::TM => (eps * kz - big_kz) / (eps * kz + big_kz),
    };
    if r.re.is_finite() && r.im.is_finite() {
        Ok(r)
    } else {
        Err(CasimirError::DegenerateDenominator {
            what: "Fresnel amplitude",
            at: kz,
        })
    }
}

/// `(k_z, K_z)` in vacuum and in the medium.
pub fn axial_wavenumbers(m: &Material, k: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let kz = vacuum_kz(k, z);
    let r = response(m, z)?;
    Ok((kz, branch_sqrt(r.excess + kz * kz, z)))
}

/// Amplitude of a semi-infinite mirror with the vacuum wavenumber `kz` given
/// directly (used along deformed integration paths).
pub fn fresnel_from_kz(m: &Material, z: Complex64, kz: Complex64, pol: Polarization) -> Result<Complex64> {
    let r = response(m, z)?;
    let big_kz = branch_sqrt(r.excess + kz * kz, z);
    match pol {
        Polarization::TE => te_from(r.mu, kz, big_kz, r.excess),
        Polarization::TM => tm_from(r.eps, kz, big_kz),
    }
}

pub fn fresnel(m: &Material, k: f64, z: Complex64, pol: Polarization) -> Result<Complex64> {
    fresnel_from_kz(m, z, vacuum_kz(k, z), pol)
}

/// Airy sum for a slab of thickness `d` given the single-interface amplitude.
pub fn slab_from_interface(r: Complex64, big_kz: Complex64, d: f64) -> Result<Complex64> {
    let e = (2.0 * I * big_kz * d).exp();
    let den = 1.0 - r * r * e;
    let v = r * (1.0 - e) / den;
    if den == Complex64::new(0.0, 0.0) || !(v.re.is_finite() && v.im.is_finite()) {
        return Err(CasimirError::DegenerateDenominator {
            what: "slab amplitude",
            at: big_kz,
        });
    }
    Ok(v)
}

/// Slab amplitude with an explicit `K_z`; even under `K_z -> -K_z`.
pub fn slab_fresnel_with(m: &Material, k: f64, z: Complex64, big_kz: Complex64, pol: Polarization, d: f64) -> Result<Complex64> {
    let kz = vacuum_kz(k, z);
    let eps = m.permittivity(z)?;
    let mu = m.permeability(z)?;
    let r = fresnel_parts(eps, mu, kz, big_kz, pol)?;
    slab_from_interface(r, big_kz, d)
}

pub fn slab_fresnel(m: &Material, k: f64, z: Complex64, pol: Polarization, d: f64) -> Result<Complex64> {
    let kz = vacuum_kz(k, z);
    let resp = response(m, z)?;
    let big_kz = branch_sqrt(resp.excess + kz * kz, z);
    let r = match pol {
        Polarization::TE => te_from(resp.mu, kz, big_kz, resp.excess)?,
        Polarization::TM => tm_from(resp.eps, kz, big_kz)?,
    };
    slab_from_interface(r, big_kz, d)
}

/// Amplitude at `z = i xi`, `xi >= 0`, as a real number.
///
/// At `xi = 0` the TE value is the static limit; TM is 1 there.
pub fn fresnel_imag(m: &Material, k: f64, xi: f64, pol: Polarization) -> Result<f64> {
    if xi == 0.0 {
        return Ok(fresnel_static(m, k, pol));
    }
    let a = xi * xi / (C * C);
    let kappa2 = k * k + a;
    let kappa = kappa2.sqrt();
    let mu = m.permeability_imag(xi)?;
    let chi_a = m.chi_y2_imag(xi)? / (C * C);
    let big2 = k * k + mu * (a + chi_a);
    let big = big2.sqrt();
    Ok(match pol {
        Polarization::TE => {
            let num = (mu * mu - 1.0) * k * k + mu * (mu - 1.0) * a - mu * chi_a;
            let den = mu * kappa + big;
            num / (den * den)
        }
        Polarization::TM => {
            let eps = 1.0 + chi_a / a;
            (eps * kappa - big) / (eps * kappa + big)
        }
    })
}

/// Limit of [`fresnel_imag`] as `xi -> 0+`.
pub fn fresnel_static(m: &Material, k: f64, pol: Polarization) -> f64 {
    match pol {
        Polarization::TM => 1.0,
        Polarization::TE => {
            if m.is_lossy() {
                (m.mu0 - 1.0) / (m.mu0 + 1.0)
            } else {
                let wp = m.omega_p.0 / C;
                let big = (k * k + m.mu0 * wp * wp).sqrt();
                (m.mu0 * k - big) / (m.mu0 * k + big)
            }
        }
    }
}

/// `coth(hbar omega / 2 k_B T)` on the real axis; `sign(omega)` at `T = 0`.
pub fn thermal_factor(omega: f64, temperature: f64) -> Result<f64> {
    if omega == 0.0 {
        return Err(CasimirError::Pole {
            quantity: "thermal factor",
            at: Complex64::new(0.0, 0.0),
        });
    }
    if temperature == 0.0 {
        return Ok(omega.signum());
    }
    let x = HBAR * omega / (2.0 * K_B * temperature);
    Ok(1.0 / x.tanh())
}

/// Analytic continuation of [`thermal_factor`] into the complex plane.
pub fn thermal_factor_complex(z: Complex64, temperature: f64) -> Result<Complex64> {
    let pole = || CasimirError::Pole {
        quantity: "thermal factor",
        at: z,
    };
    if temperature == 0.0 {
        return if z.re == 0.0 { Err(pole()) } else { Ok(Complex64::new(z.re.signum(), 0.0)) };
    }
    let x = HBAR * z / (2.0 * K_B * temperature);
    let (x, sign) = if x.re < 0.0 { (-x, -1.0) } else { (x, 1.0) };
    let v = if x.re < 20.0 {
        let den = x.sinh();
        // Away from the origin sinh is only known to ~eps |x| near its zeros i pi n.
        let floor = if x.norm() > 1.0 { 4.0 * f64::EPSILON * x.norm() } else { 0.0 };
        if den.norm() <= floor {
            return Err(pole());
        }
        sign * x.cosh() / den
    } else {
        let e = (-2.0 * x).exp();
        sign * (1.0 + e) / (1.0 - e)
    };
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(pole())
    }
}

/// `x / (1 - x)` with `x = rr exp(2 i k_z L)`.
pub fn round_trip(rr: Complex64, kz: Complex64, separation: f64) -> Result<Complex64> {
    let x = rr * (2.0 * I * kz * separation).exp();
    let den = 1.0 - x;
    let f = x / den;
    if den == Complex64::new(0.0, 0.0) || !(f.re.is_finite() && f.im.is_finite()) {
        return Err(CasimirError::DegenerateDenominator {
            what: "cavity round trip",
            at: kz,
        });
    }
    Ok(f)
}

fn reflection_product<F>(cfg: &CavityConfig, mut amp: F) -> Result<Complex64>
where
    F: FnMut(&Material) -> Result<Complex64>,
{
    match cfg.response {
        MirrorResponse::Ideal => Ok(Complex64::new(1.0, 0.0)),
        MirrorResponse::Transparent => Ok(Complex64::new(0.0, 0.0)),
        MirrorResponse::Physical => Ok(amp(&cfg.mirror1)? * amp(&cfg.mirror2)?),
    }
}

/// `r1 r2` at the vacuum wavenumber `kz`.
pub fn reflection_product_kz(cfg: &CavityConfig, z: Complex64, kz: Complex64, pol: Polarization) -> Result<Complex64> {
    reflection_product(cfg, |m| fresnel_from_kz(m, z, kz, pol))
}

/// Loop function `f` for an explicit vacuum wavenumber.
pub fn loop_function_kz(cfg: &CavityConfig, z: Complex64, kz: Complex64, pol: Polarization) -> Result<Complex64> {
    round_trip(reflection_product_kz(cfg, z, kz, pol)?, kz, cfg.separation)
}

pub fn loop_function_with(
    cfg: &CavityConfig,
    k: f64,
    z: Complex64,
    pol: Polarization,
    amplitudes: Amplitudes,
) -> Result<Complex64> {
    let kz = vacuum_kz(k, z);
    let rr = match amplitudes {
        Amplitudes::SemiInfinite => reflection_product_kz(cfg, z, kz, pol)?,
        Amplitudes::Slab { thickness } => reflection_product(cfg, |m| slab_fresnel(m, k, z, pol, thickness))?,
    };
    round_trip(rr, kz, cfg.separation)
}

pub fn loop_function(cfg: &CavityConfig, k: f64, z: Complex64, pol: Polarization) -> Result<Complex64> {
    loop_function_with(cfg, k, z, pol, Amplitudes::SemiInfinite)
}

fn real_round_trip(rr: f64, kappa: f64, separation: f64) -> f64 {
    let e = (-2.0 * kappa * separation).exp();
    // 1 - rr e, written to keep digits when rr -> 1 and kappa L -> 0.
    let den = (1.0 - rr) - rr * (-2.0 * kappa * separation).exp_m1();
    rr * e / den
}

/// Loop function at `z = i xi`, real by reflection symmetry.
pub fn loop_function_imag(cfg: &CavityConfig, k: f64, xi: f64, pol: Polarization) -> Result<f64> {
    let rr = match cfg.response {
        MirrorResponse::Ideal => 1.0,
        MirrorResponse::Transparent => 0.0,
        MirrorResponse::Physical => fresnel_imag(&cfg.mirror1, k, xi, pol)? * fresnel_imag(&cfg.mirror2, k, xi, pol)?,
    };
    let kappa = (k * k + xi * xi / (C * C)).sqrt();
    let f = real_round_trip(rr, kappa, cfg.separation);
    if f.is_finite() {
        Ok(f)
    } else {
        Err(CasimirError::DegenerateDenominator {
            what: "cavity round trip",
            at: Complex64::new(0.0, xi),
        })
    }
}

/// Spectral density `p = hbar k_z f C`.
pub fn spectral_density_with(
    cfg: &CavityConfig,
    k: f64,
    z: Complex64,
    pol: Polarization,
    amplitudes: Amplitudes,
) -> Result<Complex64> {
    let f = loop_function_with(cfg, k, z, pol, amplitudes)?;
    let c = thermal_factor_complex(z, cfg.temperature)?;
    Ok(HBAR * vacuum_kz(k, z) * f * c)
}

pub fn spectral_density(cfg: &CavityConfig, k: f64, z: Complex64, pol: Polarization) -> Result<Complex64> {
    spectral_density_with(cfg, k, z, pol, Amplitudes::SemiInfinite)
}
