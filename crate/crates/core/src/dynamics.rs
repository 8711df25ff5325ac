//! Linearized drift/diffusion and covariance propagation.
//!
//! Quadrature ordering is `(δq, δp, δX, δY)` throughout; covariance entries
//! are symmetrized second moments with vacuum variance 1/2.

use nalgebra::{Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{DerivedParams, PhysicalParams};

/// Tolerance on the smallest symplectic eigenvalue (`≥ 1/2 - tol`).
pub const BONA_FIDE_TOL: f64 = 1e-9;

/// Relative tolerance on covariance symmetry.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix(pub Matrix4<f64>);

impl DriftMatrix {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Frequency used to make the generator dimensionless before
    /// exponentiation. This is ω_m for matrices built by [`drift_matrix`].
    fn time_scale(&self) -> f64 {
        let w = self.0[(0, 1)].abs();
        if w > 0.0 {
            w
        } else {
            let m = self.0.amax();
            if m > 0.0 { m } else { 1.0 }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix(pub Matrix4<f64>);

impl DiffusionMatrix {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }
}

/// Complete zero-mean Gaussian state of the two modes at a given time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceState {
    v: Matrix4<f64>,
    /// Seconds since the start of the interaction; `f64::INFINITY` for the
    /// stationary state.
    time: f64,
}

impl CovarianceState {
    /// Validated constructor: symmetric and satisfying the uncertainty
    /// principle.
    pub fn new(v: Matrix4<f64>, time: f64) -> Result<Self> {
        let s = CovarianceState { v, time };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn from_raw(v: Matrix4<f64>, time: f64) -> Self {
        CovarianceState { v, time }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.v
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn symplectic_eigenvalues(&self) -> (f64, f64) {
        linalg::two_mode_symplectic_eigenvalues(&self.v)
    }

    pub fn validate(&self) -> Result<()> {
        if self.v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Unphysical("non-finite entries".into()));
        }
        let asym = (self.v - self.v.transpose()).amax();
        if asym > SYMMETRY_TOL * self.v.amax().max(f64::MIN_POSITIVE) {
            return Err(Error::Unphysical(format!("asymmetry {asym:e}")));
        }
        let (nu_minus, _) = self.symplectic_eigenvalues();
        let min_eig = self.v.symmetric_eigenvalues().min();
        if min_eig < 0.0 || nu_minus < 0.5 - BONA_FIDE_TOL {
            return Err(Error::Unphysical(format!(
                "smallest symplectic eigenvalue {nu_minus} < 1/2"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stability {
    pub stable: bool,
    /// Largest real part of the drift eigenvalues, rad/s.
    pub abscissa: f64,
}

/// ```text
/// [  0    ω_m   0    0 ]
/// [ -ω_m  -γ_m  G    0 ]
/// [  0    0    -κ    Δ ]
/// [  G    0    -Δ   -κ ]
/// ```
pub fn drift_matrix(d: &DerivedParams, p: &PhysicalParams) -> DriftMatrix {
    let kappa = p.kappa_convention.dynamics_rate(p.cavity_decay);
    let (wm, gm, g, det) = (p.mech_freq, p.mech_damping, d.g_eff, p.detuning);
    DriftMatrix(Matrix4::new(
        0.0, wm, 0.0, 0.0, //
        -wm, -gm, g, 0.0, //
        0.0, 0.0, -kappa, det, //
        g, 0.0, -det, -kappa,
    ))
}

/// `diag(0, γ_m(2n̄+1), κ, κ)`.
pub fn diffusion_matrix(p: &PhysicalParams, nbar: f64) -> DiffusionMatrix {
    let kappa = p.kappa_convention.dynamics_rate(p.cavity_decay);
    DiffusionMatrix(Matrix4::from_diagonal(&Vector4::new(
        0.0,
        p.mech_damping * (2.0 * nbar + 1.0),
        kappa,
        kappa,
    )))
}

pub fn is_stable(k: &DriftMatrix) -> Stability {
    let scale = k.time_scale();
    let abscissa = linalg::spectral_abscissa(&(k.0 / scale)) * scale;
    Stability { stable: abscissa < 0.0, abscissa }
}

/// Thermal mechanics at occupation `nbar`, cavity field in vacuum, no
/// correlations.
pub fn initial_covariance(nbar: f64) -> CovarianceState {
    let m = nbar + 0.5;
    CovarianceState::from_raw(Matrix4::from_diagonal(&Vector4::new(m, m, 0.5, 0.5)), 0.0)
}

/// Evolves `v0` for `t` seconds: `v(t) = M v0 Mᵀ + Q(t)`, `M = e^{kt}`.
pub fn propagate(v0: &CovarianceState, k: &DriftMatrix, d: &DiffusionMatrix, t: f64) -> Result<CovarianceState> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    if t == 0.0 {
        return Ok(*v0);
    }
    let scale = k.time_scale();
    let (m, q) = linalg::covariance_flow(&(k.0 / scale), &(d.0 / scale), t * scale);
    let v = linalg::symmetrize(&(m * v0.v * m.transpose() + q));
    Ok(CovarianceState::from_raw(v, v0.time + t))
}

/// Stationary covariance solving `k v + v kᵀ + D = 0`.
pub fn steady_state(k: &DriftMatrix, d: &DiffusionMatrix) -> Result<CovarianceState> {
    let stab = is_stable(k);
    if !stab.stable {
        return Err(Error::Unstable { abscissa: stab.abscissa });
    }
    let scale = k.time_scale();
    let v = linalg::solve_lyapunov(&(k.0 / scale), &(d.0 / scale))
        .ok_or(Error::Unstable { abscissa: stab.abscissa })?;
    Ok(CovarianceState::from_raw(v, f64::INFINITY))
}

/// Drift, diffusion and initial state for a parameter set.
#[derive(Debug, Clone, Copy)]
pub struct System {
    pub params: PhysicalParams,
    pub derived: DerivedParams,
    pub drift: DriftMatrix,
    pub diffusion: DiffusionMatrix,
    pub initial: CovarianceState,
}

impl System {
    pub fn new(params: &PhysicalParams) -> Result<Self> {
        let derived = crate::model::derive_params(params)?;
        Ok(System {
            params: *params,
            derived,
            drift: drift_matrix(&derived, params),
            diffusion: diffusion_matrix(params, derived.thermal_occ),
            initial: initial_covariance(derived.thermal_occ),
        })
    }

    pub fn stability(&self) -> Stability {
        is_stable(&self.drift)
    }

    /// Joint state after `t` seconds of interaction. Fails if the drift is
    /// unstable.
    pub fn state_at(&self, t: f64) -> Result<CovarianceState> {
        let stab = self.stability();
        if !stab.stable {
            return Err(Error::Unstable { abscissa: stab.abscissa });
        }
        propagate(&self.initial, &self.drift, &self.diffusion, t)
    }

    pub fn steady_state(&self) -> Result<CovarianceState> {
        steady_state(&self.drift, &self.diffusion)
    }
}
