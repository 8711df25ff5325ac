//! Experiment parameters and the couplings derived from them.
//!
//! Everything here is SI: lengths in meters, angular frequencies and rates in
//! rad/s, mass in kilograms, power in watts, temperature in kelvin.

use std::f64::consts::{PI, SQRT_2};

use crate::constants::{C_LIGHT, HBAR, K_B};
use crate::error::{Error, Result};

/// How the configured cavity decay rate enters the linearized dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KappaConvention {
    /// κ is the amplitude decay rate: drift `-κ`, diffusion `κ`. With this
    /// choice the undriven field relaxes to vacuum variance 1/2.
    #[default]
    Amplitude,
    /// κ is the energy decay rate; the dynamics use κ/2.
    Energy,
}

impl KappaConvention {
    /// Rate that enters the drift and diffusion matrices.
    pub fn dynamics_rate(self, kappa: f64) -> f64 {
        match self {
            KappaConvention::Amplitude => kappa,
            KappaConvention::Energy => 0.5 * kappa,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KappaConvention::Amplitude => "amplitude",
            KappaConvention::Energy => "energy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub cavity_length: f64,
    /// Drive wavelength. The cavity and drive frequencies are both taken as
    /// `2πc/λ`.
    pub wavelength: f64,
    pub mech_freq: f64,
    pub mech_damping: f64,
    pub cavity_decay: f64,
    pub input_power: f64,
    pub effective_mass: f64,
    pub temperature: f64,
    /// Effective (post-linearization) detuning. Negative is blue-detuned.
    pub detuning: f64,
    pub kappa_convention: KappaConvention,
}

impl PhysicalParams {
    /// Blue-detuned GHz-resonator working point: L = 1 mm, λ = 1064 nm,
    /// ω_m/2π = 1 GHz, P = 5 mW, m = 5 ng, κ/2π = 90 MHz, T = 1 mK,
    /// γ_m/2π = 100 Hz, Δ = -ω_m.
    pub fn blue_detuned_reference() -> Self {
        let mech_freq = 2.0 * PI * 1.0e9;
        PhysicalParams {
            cavity_length: 1.0e-3,
            wavelength: 1064.0e-9,
            mech_freq,
            mech_damping: 2.0 * PI * 100.0,
            cavity_decay: 2.0 * PI * 90.0e6,
            input_power: 5.0e-3,
            effective_mass: 5.0e-12,
            temperature: 1.0e-3,
            detuning: -mech_freq,
            kappa_convention: KappaConvention::Amplitude,
        }
    }

    /// Red-detuned stationary working point with a 5 pg oscillator.
    ///
    /// Only the mass and the sign of the detuning are pinned; every other
    /// value is carried over from [`PhysicalParams::blue_detuned_reference`]
    /// and should be treated as a reconstruction.
    pub fn red_detuned_steady_preset() -> Self {
        let base = Self::blue_detuned_reference();
        PhysicalParams {
            effective_mass: 5.0e-15,
            detuning: base.mech_freq,
            ..base
        }
    }

    /// Cavity (and drive) angular frequency `2πc/λ`.
    pub fn cavity_freq(&self) -> f64 {
        2.0 * PI * C_LIGHT / self.wavelength
    }

    /// κ < ω_m. Reported, not enforced.
    pub fn is_sideband_resolved(&self) -> bool {
        self.cavity_decay < self.mech_freq
    }

    /// Checks every field and reports all violations at once.
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        let positive = [
            ("cavity_length", self.cavity_length),
            ("wavelength", self.wavelength),
            ("mech_freq", self.mech_freq),
            ("mech_damping", self.mech_damping),
            ("cavity_decay", self.cavity_decay),
            ("effective_mass", self.effective_mass),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                errs.push(format!("{name} must be finite and > 0 (got {v})"));
            }
        }
        for (name, v) in [("input_power", self.input_power), ("temperature", self.temperature)] {
            if !(v.is_finite() && v >= 0.0) {
                errs.push(format!("{name} must be finite and >= 0 (got {v})"));
            }
        }
        if !self.detuning.is_finite() {
            errs.push(format!("detuning must be finite (got {})", self.detuning));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameters(errs))
        }
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::blue_detuned_reference()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Single-photon coupling G0, rad/s.
    pub g0: f64,
    /// Drive rate E, 1/s.
    pub drive_amp: f64,
    /// Mean intracavity amplitude α_s (real, ≥ 0).
    pub cavity_amp: f64,
    /// Linearized coupling G = √2·G0·α_s, rad/s.
    pub g_eff: f64,
    /// Mechanical bath occupation n̄.
    pub thermal_occ: f64,
    /// G/κ; the linearized picture assumes this is ≪ 1.
    pub coupling_ratio: f64,
    /// κ/ω_m; < 1 means sideband resolved.
    pub sideband_ratio: f64,
}

/// Bose–Einstein occupation `1/(exp(ħω/k_B T) - 1)`; exactly 0 at T = 0.
pub fn thermal_occupation(mech_freq: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = HBAR * mech_freq / (K_B * temperature);
    1.0 / x.exp_m1()
}

pub fn derive_params(p: &PhysicalParams) -> Result<DerivedParams> {
    p.validate()?;
    let omega_c = p.cavity_freq();
    let g0 = omega_c / p.cavity_length * (HBAR / (p.effective_mass * p.mech_freq)).sqrt();
    // ω_0 = ω_c
    let drive_amp = (2.0 * p.input_power * p.cavity_decay / (HBAR * omega_c)).sqrt();
    let cavity_amp = drive_amp / p.cavity_decay.hypot(p.detuning);
    let g_eff = SQRT_2 * g0 * cavity_amp;
    Ok(DerivedParams {
        g0,
        drive_amp,
        cavity_amp,
        g_eff,
        thermal_occ: thermal_occupation(p.mech_freq, p.temperature),
        coupling_ratio: g_eff / p.cavity_decay,
        sideband_ratio: p.cavity_decay / p.mech_freq,
    })
}
