//! Casimir pressure between plane metallic mirrors, magnetic or not.
//!
//! Two pressure engines (real-frequency integral and Matsubara sum), the
//! low-frequency TE mode structure, and the Foucault-mode contribution.
//! SI units throughout, angular frequencies in rad/s.

pub mod error;
pub mod foucault;
pub mod materials;
pub mod modes;
pub mod numerics;
pub mod optics;
pub mod pressure;
pub mod units;

pub use error::{CasimirError, Result};
pub use foucault::{foucault_density, foucault_distance_scan, foucault_total, FoucaultDensity};
pub use materials::{Material, MaterialKind};
pub use modes::{mode_chart, ModeChart};
pub use optics::{Amplitudes, CavityConfig, MirrorResponse, Polarization, TransverseWavevector};
pub use pressure::{pressure_lifshitz, pressure_matsubara, PressureMethod, PressureResult};
pub use units::AngularFrequency;
