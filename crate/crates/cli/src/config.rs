//! TOML run configuration.
//!
//! Every key is optional. Omitted physical parameters fall back to the
//! blue-detuned GHz reference point; angular frequencies are given in Hz as
//! `*_over_2pi` keys.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use optomech::model::{KappaConvention, PhysicalParams};
use serde::Deserialize;

use crate::error::CliError;

/// Upper bound on the number of points in any single grid axis.
const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ExperimentKind {
    TimeSweep,
    TempSweep,
    WignerGrid,
    Optimum,
    SteadyRed,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::TimeSweep => "time_sweep",
            ExperimentKind::TempSweep => "temp_sweep",
            ExperimentKind::WignerGrid => "wigner_grid",
            ExperimentKind::Optimum => "optimum",
            ExperimentKind::SteadyRed => "steady_red",
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    params: RawParams,
    #[serde(default)]
    experiment: RawExperiment,
    #[serde(default)]
    grids: RawGrids,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    cavity_length: Option<f64>,
    wavelength: Option<f64>,
    mech_freq_over_2pi: Option<f64>,
    mech_damping_over_2pi: Option<f64>,
    cavity_decay_over_2pi: Option<f64>,
    input_power: Option<f64>,
    effective_mass: Option<f64>,
    temperature: Option<f64>,
    detuning_over_mech_freq: Option<f64>,
    detuning_over_2pi: Option<f64>,
    kappa_convention: Option<RawKappa>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawKappa {
    Amplitude,
    Energy,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    kind: Option<ExperimentKind>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrids {
    time_start: Option<f64>,
    time_stop: Option<f64>,
    time_step: Option<f64>,
    temperatures: Option<Vec<f64>>,
    subtraction_time: Option<f64>,
    wigner_half_width: Option<f64>,
    wigner_step: Option<f64>,
    n_max: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    directory: Option<PathBuf>,
}

/// Grid settings with defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Grids {
    /// Seconds.
    pub time_start: f64,
    pub time_stop: f64,
    pub time_step: f64,
    /// Kelvin, strictly increasing.
    pub temperatures: Vec<f64>,
    /// Subtraction time for `temp_sweep` and `wigner_grid`, seconds.
    pub subtraction_time: f64,
    pub wigner_half_width: f64,
    pub wigner_step: f64,
    /// Highest phonon number reported.
    pub n_max: usize,
}

impl Default for Grids {
    fn default() -> Self {
        Grids {
            time_start: 0.5e-6,
            time_stop: 50.0e-6,
            time_step: 0.5e-6,
            temperatures: vec![5e-3, 10e-3, 15e-3, 20e-3, 25e-3, 50e-3],
            subtraction_time: 9.0e-6,
            wigner_half_width: 2.0,
            wigner_step: 0.05,
            n_max: 10,
        }
    }
}

impl Grids {
    /// `time_start + i·time_step` up to `time_stop` inclusive.
    pub fn times(&self) -> Vec<f64> {
        let n = ((self.time_stop - self.time_start) / self.time_step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.time_start + i as f64 * self.time_step).collect()
    }

    /// Symmetric phase-space axis; the middle point is exactly zero.
    pub fn wigner_axis(&self) -> Vec<f64> {
        let k = (self.wigner_half_width / self.wigner_step + 1e-9).floor() as i64;
        (-k..=k).map(|i| i as f64 * self.wigner_step).collect()
    }

    fn validate(&self, errs: &mut Vec<String>) {
        let positive = [
            ("grids.time_start", self.time_start),
            ("grids.time_step", self.time_step),
            ("grids.subtraction_time", self.subtraction_time),
            ("grids.wigner_half_width", self.wigner_half_width),
            ("grids.wigner_step", self.wigner_step),
        ];
        for (key, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                errs.push(format!("{key} must be finite and > 0 (got {v})"));
            }
        }
        if !(self.time_stop.is_finite() && self.time_stop >= self.time_start) {
            errs.push(format!(
                "grids.time_stop must be finite and >= grids.time_start (got {})",
                self.time_stop
            ));
        } else if self.time_step > 0.0 && (self.time_stop - self.time_start) / self.time_step > MAX_GRID_POINTS as f64 {
            errs.push(format!("grids.time_step gives more than {MAX_GRID_POINTS} points"));
        }
        if self.wigner_step > 0.0 && self.wigner_half_width / self.wigner_step > MAX_GRID_POINTS as f64 {
            errs.push(format!("grids.wigner_step gives more than {MAX_GRID_POINTS} points"));
        }
        if self.temperatures.is_empty() {
            errs.push("grids.temperatures must not be empty".into());
        }
        if let Some(t) = self.temperatures.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            errs.push(format!("grids.temperatures entries must be finite and >= 0 (got {t})"));
        }
        if self.temperatures.windows(2).any(|w| !(w[1] > w[0])) {
            errs.push("grids.temperatures must be strictly increasing".into());
        }
        if !(1..=60).contains(&self.n_max) {
            errs.push(format!("grids.n_max must be in 1..=60 (got {})", self.n_max));
        }
    }
}

/// A validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kind: ExperimentKind,
    pub params: PhysicalParams,
    pub grids: Grids,
    pub output_dir: PathBuf,
    /// Worker threads for grid points; 1 runs on the calling thread.
    pub threads: usize,
}

impl RunConfig {
    /// The resolved configuration as `key = value` lines. Output location and
    /// thread count are excluded so they do not affect file names.
    pub fn canonical(&self) -> String {
        let p = &self.params;
        let g = &self.grids;
        let mut s = String::new();
        let mut line = |k: &str, v: String| writeln!(s, "{k} = {v}").unwrap();
        line("experiment.kind", self.kind.as_str().into());
        line("params.cavity_length", fmt_f64(p.cavity_length));
        line("params.wavelength", fmt_f64(p.wavelength));
        line("params.mech_freq", fmt_f64(p.mech_freq));
        line("params.mech_damping", fmt_f64(p.mech_damping));
        line("params.cavity_decay", fmt_f64(p.cavity_decay));
        line("params.input_power", fmt_f64(p.input_power));
        line("params.effective_mass", fmt_f64(p.effective_mass));
        line("params.temperature", fmt_f64(p.temperature));
        line("params.detuning", fmt_f64(p.detuning));
        line("params.kappa_convention", p.kappa_convention.as_str().into());
        line("grids.time_start", fmt_f64(g.time_start));
        line("grids.time_stop", fmt_f64(g.time_stop));
        line("grids.time_step", fmt_f64(g.time_step));
        let temps: Vec<String> = g.temperatures.iter().map(|t| fmt_f64(*t)).collect();
        line("grids.temperatures", format!("[{}]", temps.join(", ")));
        line("grids.subtraction_time", fmt_f64(g.subtraction_time));
        line("grids.wigner_half_width", fmt_f64(g.wigner_half_width));
        line("grids.wigner_step", fmt_f64(g.wigner_step));
        line("grids.n_max", g.n_max.to_string());
        s
    }
}

/// Shortest round-trip representation in exponent form.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}

/// Reads and validates a config file.
pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::ConfigRead {
        path: path.to_path_buf(),
        source: e,
    })?;
    parse_config(&text)
}

/// Parses and validates config text. Kind-specific presets are applied
/// here, so a later kind override should go through [`resolve`].
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    parse_config_with_kind(text, None)
}

/// Like [`parse_config`], with `kind` taking precedence over the file.
pub fn parse_config_with_kind(text: &str, kind: Option<ExperimentKind>) -> Result<RunConfig, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::ConfigParse(e.to_string()))?;
    resolve(raw, kind)
}

fn resolve(raw: RawConfig, kind_override: Option<ExperimentKind>) -> Result<RunConfig, CliError> {
    let kind = kind_override.or(raw.experiment.kind).unwrap_or(ExperimentKind::TimeSweep);
    let rp = raw.params;
    let mut errs = Vec::new();

    let base = if kind == ExperimentKind::SteadyRed {
        PhysicalParams::red_detuned_steady_preset()
    } else {
        PhysicalParams::blue_detuned_reference()
    };
    let hz = |v: Option<f64>, default: f64| v.map_or(default, |f| 2.0 * PI * f);
    let mech_freq = hz(rp.mech_freq_over_2pi, base.mech_freq);

    let detuning = match (rp.detuning_over_mech_freq, rp.detuning_over_2pi) {
        (Some(_), Some(_)) => {
            errs.push("params.detuning_over_mech_freq and params.detuning_over_2pi are mutually exclusive".into());
            base.detuning
        }
        (Some(r), None) => r * mech_freq,
        (None, Some(f)) => 2.0 * PI * f,
        (None, None) => base.detuning / base.mech_freq * mech_freq,
    };

    let params = PhysicalParams {
        cavity_length: rp.cavity_length.unwrap_or(base.cavity_length),
        wavelength: rp.wavelength.unwrap_or(base.wavelength),
        mech_freq,
        mech_damping: hz(rp.mech_damping_over_2pi, base.mech_damping),
        cavity_decay: hz(rp.cavity_decay_over_2pi, base.cavity_decay),
        input_power: rp.input_power.unwrap_or(base.input_power),
        effective_mass: rp.effective_mass.unwrap_or(base.effective_mass),
        temperature: rp.temperature.unwrap_or(base.temperature),
        detuning,
        kappa_convention: match rp.kappa_convention {
            Some(RawKappa::Amplitude) | None => KappaConvention::Amplitude,
            Some(RawKappa::Energy) => KappaConvention::Energy,
        },
    };
    let positive = [
        ("params.cavity_length", params.cavity_length),
        ("params.wavelength", params.wavelength),
        ("params.mech_freq_over_2pi", params.mech_freq),
        ("params.mech_damping_over_2pi", params.mech_damping),
        ("params.cavity_decay_over_2pi", params.cavity_decay),
        ("params.effective_mass", params.effective_mass),
    ];
    for (key, v) in positive {
        if !(v.is_finite() && v > 0.0) {
            errs.push(format!("{key} must be finite and > 0"));
        }
    }
    for (key, v) in [("params.input_power", params.input_power), ("params.temperature", params.temperature)] {
        if !(v.is_finite() && v >= 0.0) {
            errs.push(format!("{key} must be finite and >= 0 (got {v})"));
        }
    }
    if !params.detuning.is_finite() {
        errs.push("params.detuning must be finite".into());
    }

    let d = Grids::default();
    let rg = raw.grids;
    let grids = Grids {
        time_start: rg.time_start.unwrap_or(d.time_start),
        time_stop: rg.time_stop.unwrap_or(d.time_stop),
        time_step: rg.time_step.unwrap_or(d.time_step),
        temperatures: rg.temperatures.unwrap_or(d.temperatures),
        subtraction_time: rg.subtraction_time.unwrap_or(d.subtraction_time),
        wigner_half_width: rg.wigner_half_width.unwrap_or(d.wigner_half_width),
        wigner_step: rg.wigner_step.unwrap_or(d.wigner_step),
        n_max: rg.n_max.unwrap_or(d.n_max),
    };
    grids.validate(&mut errs);

    if !errs.is_empty() {
        return Err(CliError::Validation(errs));
    }
    Ok(RunConfig {
        kind,
        params,
        grids,
        output_dir: raw.output.directory.unwrap_or_else(|| PathBuf::from(".")),
        threads: 1,
    })
}

/// Accepts an unset `PHONON_CONSTANTS` or the one supported constant set.
pub fn check_constants(value: Option<&str>) -> Result<(), CliError> {
    match value {
        None => Ok(()),
        Some(v) if v == optomech::constants::CONSTANTS_VERSION => Ok(()),
        Some(v) => Err(CliError::Validation(vec![format!(
            "PHONON_CONSTANTS={v} is not supported (only {})",
            optomech::constants::CONSTANTS_VERSION
        )])),
    }
}
