//! Experiment kernels. Each returns a [`Table`] whose rows follow grid order.

use optomech::conditioning::{
    condition, effective_phonon_number, find_optimal_subtraction_time, logarithmic_negativity, phonon_distribution,
    wigner_eval,
};
use optomech::dynamics::{CovarianceState, System};
use optomech::model::PhysicalParams;
use rayon::prelude::*;

use crate::config::{ExperimentKind, RunConfig};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Columns shared by every experiment that conditions a state.
fn record_columns(n_max: usize) -> Vec<String> {
    let mut c: Vec<String> = ["F", "n_eff", "E_N", "A0A1", "Brr_over_A1", "Bri_over_A1", "Bii_over_A1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    c.extend((0..=n_max).map(|n| format!("P{n}")));
    c.push("P_rest".into());
    c
}

/// F, n_eff, E_N, A0·A1, B/A1 ratios, P(0..=n_max) and the truncation
/// remainder for a joint state.
pub fn record(v: &CovarianceState, n_max: usize) -> Result<Vec<f64>, CliError> {
    let w = condition(v)?;
    let dist = phonon_distribution(&w, n_max)?;
    let mut row = vec![
        dist.probs[1],
        effective_phonon_number(v),
        logarithmic_negativity(v),
        w.a0 * w.a1,
        w.brr / w.a1,
        w.bri / w.a1,
        w.bii / w.a1,
    ];
    row.extend_from_slice(&dist.probs);
    row.push(dist.remainder);
    Ok(row)
}

/// Maps `f` over `items`, in parallel when `threads > 1`, keeping input
/// order. The first error in grid order wins.
fn map_ordered<T, F>(items: &[T], threads: usize, f: F) -> Result<Vec<Vec<f64>>, CliError>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<f64>, CliError> + Sync + Send,
{
    let results: Vec<_> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
        pool.install(|| items.par_iter().map(&f).collect())
    } else {
        items.iter().map(&f).collect()
    };
    results.into_iter().collect()
}

pub fn run_experiment(cfg: &RunConfig) -> Result<Table, CliError> {
    match cfg.kind {
        ExperimentKind::TimeSweep => time_sweep(cfg),
        ExperimentKind::TempSweep => temp_sweep(cfg),
        ExperimentKind::WignerGrid => wigner_grid(cfg),
        ExperimentKind::Optimum => optimum(cfg),
        ExperimentKind::SteadyRed => steady(cfg),
    }
}

fn time_sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    let sys = System::new(&cfg.params)?;
    let n_max = cfg.grids.n_max;
    let wm = cfg.params.mech_freq;
    let rows = map_ordered(&cfg.grids.times(), cfg.threads, |&t| {
        let mut row = vec![t, wm * t];
        row.extend(record(&sys.state_at(t)?, n_max)?);
        Ok(row)
    })?;
    let mut columns = vec!["t".to_string(), "omega_m_t".to_string()];
    columns.extend(record_columns(n_max));
    Ok(Table { columns, rows })
}

fn temp_sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    let n_max = cfg.grids.n_max;
    let t = cfg.grids.subtraction_time;
    let rows = map_ordered(&cfg.grids.temperatures, cfg.threads, |&kelvin| {
        let p = PhysicalParams { temperature: kelvin, ..cfg.params };
        let sys = System::new(&p)?;
        let mut row = vec![kelvin, t];
        row.extend(record(&sys.state_at(t)?, n_max)?);
        Ok(row)
    })?;
    let mut columns = vec!["T".to_string(), "t".to_string()];
    columns.extend(record_columns(n_max));
    Ok(Table { columns, rows })
}

fn wigner_grid(cfg: &RunConfig) -> Result<Table, CliError> {
    let sys = System::new(&cfg.params)?;
    let w = condition(&sys.state_at(cfg.grids.subtraction_time)?)?;
    let axis = cfg.grids.wigner_axis();
    let points: Vec<(f64, f64)> = axis.iter().flat_map(|&dr| axis.iter().map(move |&di| (dr, di))).collect();
    let rows = map_ordered(&points, cfg.threads, |&(dr, di)| Ok(vec![dr, di, wigner_eval(&w, dr, di)]))?;
    Ok(Table {
        columns: vec!["dr".into(), "di".into(), "W".into()],
        rows,
    })
}

fn optimum(cfg: &RunConfig) -> Result<Table, CliError> {
    let opt = find_optimal_subtraction_time(&cfg.params, &cfg.grids.times())?;
    let sys = System::new(&cfg.params)?;
    let mut row = vec![opt.time, cfg.params.mech_freq * opt.time];
    row.extend(record(&sys.state_at(opt.time)?, cfg.grids.n_max)?);
    let mut columns = vec!["t_opt".to_string(), "omega_m_t_opt".to_string()];
    columns.extend(record_columns(cfg.grids.n_max));
    Ok(Table { columns, rows: vec![row] })
}

fn steady(cfg: &RunConfig) -> Result<Table, CliError> {
    let sys = System::new(&cfg.params)?;
    let row = record(&sys.steady_state()?, cfg.grids.n_max)?;
    Ok(Table {
        columns: record_columns(cfg.grids.n_max),
        rows: vec![row],
    })
}
