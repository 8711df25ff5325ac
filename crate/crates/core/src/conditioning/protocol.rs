use super::{block_decompose, fidelity, wigner_coefficients, WignerCoefficients};
use crate::dynamics::{CovarianceState, System};
use crate::error::{Error, Result};
use crate::model::PhysicalParams;

/// Subtracts one photon from the field of `v`.
pub fn condition(v: &CovarianceState) -> Result<WignerCoefficients> {
    wigner_coefficients(&block_decompose(v))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalTime {
    pub time: f64,
    pub fidelity: f64,
}

/// Scans `t_grid` for the subtraction time with the highest single-phonon
/// fidelity; ties go to the earliest time.
///
/// Grid points where the field still holds no photons (`t = 0`) are skipped.
pub fn find_optimal_subtraction_time(p: &PhysicalParams, t_grid: &[f64]) -> Result<OptimalTime> {
    if t_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if let Some(bad) = t_grid.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::InvalidParameters(vec![format!("grid time {bad} must be finite and >= 0")]));
    }
    let system = System::new(p)?;
    let mut best: Option<OptimalTime> = None;
    let mut last_err = None;
    for &t in t_grid {
        let w = match condition(&system.state_at(t)?) {
            Ok(w) => w,
            Err(e @ Error::VacuumField { .. }) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let f = fidelity(&w, 1)?;
        if best.is_none_or(|b| f > b.fidelity) {
            best = Some(OptimalTime { time: t, fidelity: f });
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::EmptyGrid))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_grid() {
        let p = PhysicalParams::default();
        let t0 = 3.0e-6;
        let opt = find_optimal_subtraction_time(&p, &[t0]).unwrap();
        let sys = System::new(&p).unwrap();
        let f = fidelity(&condition(&sys.state_at(t0).unwrap()).unwrap(), 1).unwrap();
        assert_eq!(opt, OptimalTime { time: t0, fidelity: f });
    }

    #[test]
    fn ties_go_to_earliest() {
        let p = PhysicalParams::default();
        let opt = find_optimal_subtraction_time(&p, &[2.0e-6, 2.0e-6, 2.0e-6]).unwrap();
        assert_eq!(opt.time, 2.0e-6);
    }

    #[test]
    fn initial_instant_is_skipped() {
        let p = PhysicalParams::default();
        let opt = find_optimal_subtraction_time(&p, &[0.0, 1.0e-6]).unwrap();
        assert_eq!(opt.time, 1.0e-6);
        assert!(matches!(find_optimal_subtraction_time(&p, &[0.0]), Err(Error::VacuumField { .. })));
    }

    #[test]
    fn bad_grids() {
        let p = PhysicalParams::default();
        assert_eq!(find_optimal_subtraction_time(&p, &[]), Err(Error::EmptyGrid));
        assert!(matches!(find_optimal_subtraction_time(&p, &[-1.0]), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn unstable_parameters_propagate() {
        // strong blue-detuned drive overwhelms mechanical damping
        let p = PhysicalParams { input_power: 50.0, mech_damping: 1.0, ..PhysicalParams::default() };
        assert!(matches!(find_optimal_subtraction_time(&p, &[1e-6]), Err(Error::Unstable { .. })));
    }
}
