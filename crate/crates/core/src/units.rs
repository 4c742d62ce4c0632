//! Physical constants and the eV / nm boundary conversions.
//!
//! Everything inside the crate is SI with angular frequencies in rad/s.

use std::fmt;

/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054571817e-34;
/// Speed of light in vacuum [m/s].
pub const C: f64 = 299_792_458.0;
/// Boltzmann constant [J/K].
pub const K_B: f64 = 1.380649e-23;
/// Elementary charge, i.e. one electron-volt in joules.
pub const EV: f64 = 1.602176634e-19;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub k_b: f64,
    pub ev: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        c: C,
        k_b: K_B,
        ev: EV,
    };
}

/// An angular frequency in rad/s. Negative values are legal.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct AngularFrequency(pub f64);

impl AngularFrequency {
    pub fn from_ev(energy: f64) -> Self {
        ev_to_angular(energy)
    }

    pub fn to_ev(self) -> f64 {
        angular_to_ev(self)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for AngularFrequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} rad/s", self.0)
    }
}

/// Frequency whose quantum `hbar * omega` equals `energy` electron-volts.
pub fn ev_to_angular(energy: f64) -> AngularFrequency {
    AngularFrequency(energy * EV / HBAR)
}

pub fn angular_to_ev(omega: AngularFrequency) -> f64 {
    omega.0 * HBAR / EV
}

pub fn nm_to_m(length_nm: f64) -> f64 {
    length_nm * 1e-9
}

pub fn m_to_nm(length_m: f64) -> f64 {
    length_m * 1e9
}

/// Thermal frequency `k_B T / hbar`.
pub fn thermal_frequency(temperature: f64) -> f64 {
    K_B * temperature / HBAR
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_energy() {
        assert_eq!(ev_to_angular(0.0).0, 0.0);
        assert_eq!(angular_to_ev(AngularFrequency(0.0)), 0.0);
    }

    #[test]
    fn gold_plasma_and_damping() {
        // 50-digit reference: E * eV / hbar.
        let wp = ev_to_angular(9.0).0;
        assert!((wp / 1.367_340_703_928_559_5e16 - 1.0).abs() < 1e-15);
        let g = ev_to_angular(0.035).0;
        assert!((g / 5.317_436_070_833_287e13 - 1.0).abs() < 1e-15);
        assert!((wp / 1.36734e16 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn one_ev_inverse() {
        assert!((angular_to_ev(AngularFrequency(1.519267e15)) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn constants_are_exact_si() {
        let k = PhysicalConstants::SI;
        assert_eq!(k.hbar, 1.054571817e-34);
        assert_eq!(k.c, 299792458.0);
        assert_eq!(k.k_b, 1.380649e-23);
        assert_eq!(k.ev, 1.602176634e-19);
    }

    #[test]
    fn round_trip_fixed_points() {
        for x in [1e-12, 1.0, 1e3] {
            let back = angular_to_ev(ev_to_angular(x));
            assert!((back / x - 1.0).abs() < 1e-15, "{x} -> {back}");
        }
    }

    proptest! {
        #[test]
        fn round_trip(x in -1e6f64..1e6) {
            let back = angular_to_ev(ev_to_angular(x));
            prop_assert!((back - x).abs() <= 1e-15 * x.abs().max(1e-300) * 2.0);
        }
    }
}
