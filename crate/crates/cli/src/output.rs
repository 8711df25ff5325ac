//! CSV writing with a `#` metadata header.

use std::io::Write;
use std::path::{Path, PathBuf};

use optomech::constants::CONSTANTS_VERSION;
use optomech::model::derive_params;
use sha2::{Digest, Sha256};

use crate::config::{fmt_f64, RunConfig};
use crate::error::CliError;
use crate::experiment::Table;

/// Hex characters of the config digest used in file names.
const HASH_PREFIX_LEN: usize = 16;

pub fn config_hash(cfg: &RunConfig) -> String {
    let digest = Sha256::digest(cfg.canonical().as_bytes());
    hex::encode(digest)[..HASH_PREFIX_LEN].to_string()
}

pub fn output_path(cfg: &RunConfig) -> PathBuf {
    cfg.output_dir.join(format!("{}_{}.csv", cfg.kind.as_str(), config_hash(cfg)))
}

fn header(cfg: &RunConfig) -> Result<String, CliError> {
    let d = derive_params(&cfg.params)?;
    let mut s = String::from("# optomech simulate\n");
    s.push_str(&format!("# constants = {CONSTANTS_VERSION}\n"));
    s.push_str(&format!("# config_hash = {}\n", config_hash(cfg)));
    for line in cfg.canonical().lines() {
        s.push_str(&format!("# {line}\n"));
    }
    for (k, v) in [
        ("derived.g0", d.g0),
        ("derived.cavity_amp", d.cavity_amp),
        ("derived.g_eff", d.g_eff),
        ("derived.thermal_occ", d.thermal_occ),
        ("derived.coupling_ratio", d.coupling_ratio),
        ("derived.sideband_ratio", d.sideband_ratio),
    ] {
        s.push_str(&format!("# {k} = {}\n", fmt_f64(v)));
    }
    s.push_str(&format!("# sideband_resolved = {}\n", cfg.params.is_sideband_resolved()));
    Ok(s)
}

/// Writes the header and table to `w`.
pub fn write_csv<W: Write>(mut w: W, cfg: &RunConfig, table: &Table) -> Result<(), CliError> {
    w.write_all(header(cfg)?.as_bytes())?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(&table.columns)?;
    for row in &table.rows {
        out.write_record(row.iter().map(|x| fmt_f64(*x)))?;
    }
    out.flush()?;
    Ok(())
}

/// Writes through a temporary file in `dir` and renames it into place, so a
/// failed run leaves nothing behind.
pub fn write_atomic(path: &Path, cfg: &RunConfig, table: &Table) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    write_csv(std::io::BufWriter::new(tmp.as_file_mut()), cfg, table)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// The data section (column header and rows) of a CSV produced here.
pub fn data_section(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
}
