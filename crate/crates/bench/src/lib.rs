//! Shared fixtures for the benchmarks.

use casimir_core::CavityConfig;

/// Preset cavity at 300 nm and 300 K.
pub fn cavity(setup: &str) -> CavityConfig {
    CavityConfig::from_setup(setup, 300e-9, 300.0).expect("preset setup")
}
