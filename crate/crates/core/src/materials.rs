//! Drude/plasma permittivity, conductivity and permeability models.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{CasimirError, Result};
use crate::numerics::{log_quad, QuadOptions};
use crate::units::{ev_to_angular, AngularFrequency};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaterialKind {
    /// Drude permittivity with a finite relaxation rate.
    LossyDrude,
    /// The lossless plasma model; `gamma` is zero.
    StrictPlasma,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub omega_p: AngularFrequency,
    pub gamma: AngularFrequency,
    pub mu0: f64,
    pub omega_m: AngularFrequency,
    pub kind: MaterialKind,
}

/// Magnetic relaxation frequency used by both presets.
pub const PRESET_OMEGA_M_EV: f64 = 0.1e-9;

impl Material {
    pub fn new(
        omega_p: AngularFrequency,
        gamma: AngularFrequency,
        mu0: f64,
        omega_m: AngularFrequency,
        kind: MaterialKind,
    ) -> Result<Self> {
        let bad = |what: &str, v: f64| Err(CasimirError::InvalidParameter(format!("{what} out of range: {v:e}")));
        if !(omega_p.0.is_finite() && omega_p.0 > 0.0) {
            return bad("omega_p", omega_p.0);
        }
        if !(gamma.0.is_finite() && gamma.0 >= 0.0) {
            return bad("gamma", gamma.0);
        }
        if !(mu0.is_finite() && mu0 >= 1.0) {
            return bad("mu0", mu0);
        }
        if !(omega_m.0.is_finite() && omega_m.0 > 0.0) {
            return bad("omega_m", omega_m.0);
        }
        let gamma = match kind {
            MaterialKind::StrictPlasma => AngularFrequency(0.0),
            MaterialKind::LossyDrude => gamma,
        };
        Ok(Material {
            omega_p,
            gamma,
            mu0,
            omega_m,
            kind,
        })
    }

    /// Drude material from energies in eV.
    pub fn drude_ev(omega_p_ev: f64, gamma_ev: f64, mu0: f64, omega_m_ev: f64) -> Result<Self> {
        Self::new(
            ev_to_angular(omega_p_ev),
            ev_to_angular(gamma_ev),
            mu0,
            ev_to_angular(omega_m_ev),
            MaterialKind::LossyDrude,
        )
    }

    /// Gold: 9 eV plasma frequency, 35 meV relaxation, non-magnetic.
    pub fn au() -> Self {
        Self::drude_ev(9.0, 0.035, 1.0, PRESET_OMEGA_M_EV).expect("valid preset")
    }

    /// Nickel: 4.89 eV plasma frequency, 43.6 meV relaxation, mu(0) = 110.
    pub fn ni() -> Self {
        Self::drude_ev(4.89, 0.0436, 110.0, PRESET_OMEGA_M_EV).expect("valid preset")
    }

    /// Looks up `"au"` or `"ni"` (case-insensitive).
    pub fn from_preset(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "au" => Ok(Self::au()),
            "ni" => Ok(Self::ni()),
            other => Err(CasimirError::InvalidParameter(format!("unknown material preset '{other}'"))),
        }
    }

    /// Same material with `gamma` multiplied by `scale`.
    pub fn with_gamma_scale(&self, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(CasimirError::InvalidParameter(format!("gamma scale must be positive, got {scale:e}")));
        }
        Ok(Material {
            gamma: AngularFrequency(self.gamma.0 * scale),
            ..*self
        })
    }

    pub fn with_omega_m(&self, omega_m: AngularFrequency) -> Result<Self> {
        Self::new(self.omega_p, self.gamma, self.mu0, omega_m, self.kind)
    }

    /// The lossless counterpart.
    pub fn to_plasma(&self) -> Self {
        Material {
            gamma: AngularFrequency(0.0),
            kind: MaterialKind::StrictPlasma,
            ..*self
        }
    }

    pub fn is_magnetic(&self) -> bool {
        self.mu0 > 1.0
    }

    pub fn is_lossy(&self) -> bool {
        self.kind == MaterialKind::LossyDrude && self.gamma.0 > 0.0
    }

    fn check(&self, quantity: &'static str, z: Complex64, value: Complex64) -> Result<Complex64> {
        if value.re.is_finite() && value.im.is_finite() {
            Ok(value)
        } else {
            Err(CasimirError::Pole { quantity, at: z })
        }
    }

    /// Susceptibility `chi(z) = omega_p^2 / (-i z (gamma - i z))`.
    pub fn susceptibility(&self, z: Complex64) -> Result<Complex64> {
        let den = -I * z * (self.gamma.0 - I * z);
        if den == Complex64::new(0.0, 0.0) {
            return Err(CasimirError::Pole {
                quantity: "permittivity",
                at: z,
            });
        }
        self.check("permittivity", z, self.omega_p.0 * self.omega_p.0 / den)
    }

    /// `chi(z) * z^2`, finite at the origin.
    pub fn susceptibility_times_z2(&self, z: Complex64) -> Result<Complex64> {
        let den = self.gamma.0 - I * z;
        if den == Complex64::new(0.0, 0.0) {
            return Err(CasimirError::Pole {
                quantity: "permittivity",
                at: z,
            });
        }
        self.check("permittivity", z, I * self.omega_p.0 * self.omega_p.0 * z / den)
    }

    pub fn permittivity(&self, z: Complex64) -> Result<Complex64> {
        Ok(1.0 + self.susceptibility(z)?)
    }

    /// `sigma(z) = omega_p^2 / (gamma - i z)`, in units where `chi = i sigma / z`.
    pub fn conductivity(&self, z: Complex64) -> Result<Complex64> {
        let den = self.gamma.0 - I * z;
        if den == Complex64::new(0.0, 0.0) {
            return Err(CasimirError::Pole {
                quantity: "conductivity",
                at: z,
            });
        }
        self.check("conductivity", z, self.omega_p.0 * self.omega_p.0 / den)
    }

    pub fn permeability(&self, z: Complex64) -> Result<Complex64> {
        if self.mu0 == 1.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let den = 1.0 - I * z / self.omega_m.0;
        if den == Complex64::new(0.0, 0.0) {
            return Err(CasimirError::Pole {
                quantity: "permeability",
                at: z,
            });
        }
        self.check("permeability", z, 1.0 + (self.mu0 - 1.0) / den)
    }

    /// `chi(iy) y^2 = omega_p^2 y / (y + gamma)` for real `y`.
    ///
    /// At `y = 0` this is 0 for a lossy material and `omega_p^2` for plasma.
    pub fn chi_y2_imag(&self, y: f64) -> Result<f64> {
        let wp2 = self.omega_p.0 * self.omega_p.0;
        if self.gamma.0 == 0.0 {
            return Ok(wp2);
        }
        let den = y + self.gamma.0;
        if den == 0.0 {
            return Err(CasimirError::Pole {
                quantity: "permittivity",
                at: Complex64::new(0.0, y),
            });
        }
        Ok(wp2 * y / den)
    }

    /// `epsilon(iy)` for real `y`.
    pub fn permittivity_imag(&self, y: f64) -> Result<f64> {
        if y == 0.0 {
            return Err(CasimirError::Pole {
                quantity: "permittivity",
                at: Complex64::new(0.0, 0.0),
            });
        }
        Ok(1.0 + self.chi_y2_imag(y)? / (y * y))
    }

    /// `mu(iy)` for real `y`.
    pub fn permeability_imag(&self, y: f64) -> Result<f64> {
        if self.mu0 == 1.0 {
            return Ok(1.0);
        }
        let den = 1.0 + y / self.omega_m.0;
        if den == 0.0 {
            return Err(CasimirError::Pole {
                quantity: "permeability",
                at: Complex64::new(0.0, y),
            });
        }
        Ok(1.0 + (self.mu0 - 1.0) / den)
    }

    /// Dispersion integral `(2/pi) int_0^inf Re sigma(x) / (x^2 + xi^2) dx`.
    ///
    /// For a causal model this reproduces `chi(i xi)`; for the plasma model the
    /// dissipative part vanishes on the real axis and so does the result.
    pub fn kk_transform(&self, xi: f64, rel_tol: f64) -> Result<f64> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(CasimirError::InvalidParameter(format!(
                "dispersion transform needs xi > 0, got {xi:e}"
            )));
        }
        let integrand = |x: f64| match self.conductivity(Complex64::new(x, 0.0)) {
            Ok(s) => 2.0 / PI * s.re / (x * x + xi * xi),
            Err(_) => f64::NAN,
        };
        let gamma = self.gamma.0;
        let (lo, hi, breaks) = if gamma > 0.0 {
            // Re sigma <= omega_p^2/gamma near 0 and <= omega_p^2 gamma / x^2 far out.
            let lo = 0.05 * rel_tol * gamma.min(xi);
            let hi = 2.0 * gamma.max(xi) * (10.0 / rel_tol).cbrt();
            (lo, hi, vec![gamma, xi])
        } else {
            (1e-6 * xi, 1e6 * xi, vec![xi])
        };
        let opts = QuadOptions::new(1e-3 * rel_tol);
        Ok(log_quad(&integrand, lo, hi, &breaks, &opts)?.value)
    }
}

impl fmt::Display for Material {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}(omega_p={:.6} eV, gamma={:.6e} eV, mu0={}, omega_m={:.3e} eV)",
            self.kind,
            self.omega_p.to_ev(),
            self.gamma.to_ev(),
            self.mu0,
            self.omega_m.to_ev()
        )
    }
}
