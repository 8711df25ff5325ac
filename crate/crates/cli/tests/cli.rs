use std::path::Path;
use std::process::Command;

use optomech_cli::config::parse_config_with_kind;
use optomech_cli::output::data_section;
use optomech_cli::{parse_config, run, ExperimentKind, RunConfig};

fn run_in(dir: &Path, text: &str) -> (RunConfig, String) {
    let mut cfg = parse_config(text).unwrap();
    cfg.output_dir = dir.to_path_buf();
    let path = run(&cfg).unwrap();
    (cfg, std::fs::read_to_string(path).unwrap())
}

fn parse_rows(csv_text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let data = data_section(csv_text);
    let mut lines = data.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn col(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

fn simulate(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_simulate"))
        .args(args)
        .current_dir(dir)
        .env_remove("PHONON_CONSTANTS")
        .output()
        .unwrap()
}

#[test]
fn time_sweep_rows_and_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let (cfg, text) = run_in(dir.path(), "");
    assert_eq!(cfg.kind, ExperimentKind::TimeSweep);
    let (header, rows) = parse_rows(&text);
    assert_eq!(rows.len(), 100);
    for name in ["t", "omega_m_t", "F", "n_eff", "E_N", "Brr_over_A1", "Bri_over_A1", "Bii_over_A1"] {
        col(&header, name);
    }
    let (f, e, p0, rest) = (col(&header, "F"), col(&header, "E_N"), col(&header, "P0"), col(&header, "P_rest"));
    for r in &rows {
        assert!(r.iter().all(|x| x.is_finite()));
        assert!((0.0..=1.0).contains(&r[f]));
        assert!(r[e] >= 0.0);
        let total: f64 = r[p0..=rest].iter().sum();
        assert!((total - 1.0).abs() < 1e-6);
        assert_eq!(r[f], r[p0 + 1]);
    }
    assert!(text.contains("# constants = codata2018"));
    assert!(text.contains("# params.kappa_convention = amplitude"));
}

#[test]
fn wigner_grid_has_negative_minimum_at_origin() {
    let dir = tempfile::tempdir().unwrap();
    let (_, text) = run_in(dir.path(), "[experiment]\nkind = \"wigner_grid\"\n");
    let (header, rows) = parse_rows(&text);
    assert_eq!(header, ["dr", "di", "W"]);
    assert_eq!(rows.len(), 81 * 81);
    let min = rows.iter().min_by(|a, b| a[2].total_cmp(&b[2])).unwrap();
    assert_eq!((min[0], min[1]), (0.0, 0.0));
    assert!(min[2] < 0.0);
}

#[test]
fn temp_sweep_reports_distribution_per_temperature() {
    let dir = tempfile::tempdir().unwrap();
    let (_, text) = run_in(dir.path(), "[experiment]\nkind = \"temp_sweep\"\n");
    let (header, rows) = parse_rows(&text);
    assert_eq!(rows.len(), 6);
    let (t, p1, p2) = (col(&header, "T"), col(&header, "P1"), col(&header, "P2"));
    assert_eq!(rows.iter().map(|r| r[t]).collect::<Vec<_>>(), [5e-3, 10e-3, 15e-3, 20e-3, 25e-3, 50e-3]);
    for w in rows.windows(2) {
        assert!(w[1][p1] < w[0][p1]);
        assert!(w[1][p2] > w[0][p2]);
    }
}

#[test]
fn optimum_picks_best_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let (_, opt) = run_in(dir.path(), "[experiment]\nkind = \"optimum\"\n[grids]\ntime_stop = 5e-6\n");
    let (_, sweep) = run_in(dir.path(), "[grids]\ntime_stop = 5e-6\n");
    let (oh, orows) = parse_rows(&opt);
    let (sh, srows) = parse_rows(&sweep);
    assert_eq!(orows.len(), 1);
    let best = srows.iter().max_by(|a, b| a[col(&sh, "F")].total_cmp(&b[col(&sh, "F")])).unwrap();
    assert_eq!(orows[0][col(&oh, "t_opt")], best[col(&sh, "t")]);
    assert_eq!(orows[0][col(&oh, "F")], best[col(&sh, "F")]);
}

#[test]
fn steady_red_matches_late_time_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let (cfg, steady) = run_in(dir.path(), "[experiment]\nkind = \"steady_red\"\n");
    assert!(cfg.params.detuning > 0.0);
    let (_, sweep) = run_in(
        dir.path(),
        "[params]\neffective_mass = 5e-15\ndetuning_over_mech_freq = 1.0\n\
         [grids]\ntime_start = 0.05\ntime_stop = 0.05\ntime_step = 1.0\n",
    );
    let (sh, srows) = parse_rows(&steady);
    let (th, trows) = parse_rows(&sweep);
    assert_eq!(trows.len(), 1);
    for (i, name) in sh.iter().enumerate() {
        let late = trows[0][col(&th, name)];
        assert!((srows[0][i] - late).abs() < 1e-6, "{name}: {} vs {late}", srows[0][i]);
    }
}

#[test]
fn parallel_runs_match_serial_bytes() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["time_sweep", "wigner_grid", "temp_sweep"] {
        let text = format!("[experiment]\nkind = \"{kind}\"\n[grids]\ntime_stop = 1e-5\n");
        let mut cfg = parse_config(&text).unwrap();
        cfg.output_dir = dir.path().join("serial");
        let a = std::fs::read(run(&cfg).unwrap()).unwrap();
        cfg.output_dir = dir.path().join("parallel");
        cfg.threads = 4;
        let b = std::fs::read(run(&cfg).unwrap()).unwrap();
        assert_eq!(a, b, "{kind}");
    }
}

#[test]
fn file_name_tracks_resolved_config() {
    let a = parse_config("").unwrap();
    let b = parse_config("[params]\ntemperature = 1e-3\n[output]\ndirectory = \"elsewhere\"\n").unwrap();
    let c = parse_config("[params]\ntemperature = 2e-3\n").unwrap();
    let name = |cfg: &RunConfig| optomech_cli::output::output_path(cfg).file_name().unwrap().to_owned();
    assert_eq!(name(&a), name(&b));
    assert_ne!(name(&a), name(&c));
    let s = name(&a).into_string().unwrap();
    assert!(s.starts_with("time_sweep_") && s.ends_with(".csv"), "{s}");
    let red = parse_config_with_kind("", Some(ExperimentKind::SteadyRed)).unwrap();
    assert!(name(&red).to_str().unwrap().starts_with("steady_red_"));
}

#[test]
fn binary_success_prints_path() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.toml"), "[grids]\ntime_stop = 2e-6\n").unwrap();
    let out = simulate(&["c.toml", "--out", "res", "--experiment", "optimum", "--threads", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let printed = String::from_utf8(out.stdout).unwrap();
    let path = dir.path().join(printed.trim());
    assert!(path.starts_with(dir.path().join("res")));
    assert!(path.file_name().unwrap().to_str().unwrap().starts_with("optimum_"));
    assert!(path.exists());
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| std::fs::write(dir.path().join(name), text).unwrap();

    write("bad.toml", "[params]\ntemperature = -1.0\n");
    let out = simulate(&["bad.toml", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("temperature"));

    write("syntax.toml", "[params\n");
    assert_eq!(simulate(&["syntax.toml"], dir.path()).status.code(), Some(2));
    assert_eq!(simulate(&["missing.toml"], dir.path()).status.code(), Some(2));

    write("unstable.toml", "[params]\ninput_power = 1.0\n");
    let out = simulate(&["unstable.toml", "--out", "u"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let leftovers = std::fs::read_dir(dir.path().join("u")).map(|d| d.count()).unwrap_or(0);
    assert_eq!(leftovers, 0);

    write("ok.toml", "[grids]\ntime_stop = 1e-6\n");
    let out = Command::new(env!("CARGO_BIN_EXE_simulate"))
        .args(["ok.toml", "--out", "c"])
        .current_dir(dir.path())
        .env("PHONON_CONSTANTS", "codata2014")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
