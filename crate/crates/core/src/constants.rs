//! Physical constants (CODATA 2018 exact/recommended values).
//!
//! Kept in one place so regression numbers stay stable across builds.

/// Identifier for the constant set below, recorded in output metadata.
pub const CONSTANTS_VERSION: &str = "codata2018";

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;

/// Speed of light in vacuum, m/s.
pub const C_LIGHT: f64 = 2.997_924_58e8;
