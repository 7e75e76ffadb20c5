//! Result emission: the sweep CSV with a fixed header and 6-significant-digit
//! numeric formatting, plus a metadata sidecar carrying the resolved
//! configuration, provenance tags, and geometry digests — enough to
//! reproduce the CSV bit-exactly.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{SimError, SimResult};
use crate::montecarlo::SweepResult;
use crate::numerics::fmt_sig;

pub const CSV_HEADER: &str = "sweep_value,mode,p_cov,ci_low,ci_high,n_trials,seed";

/// Renders the sweep as CSV text: one row per (value, mode), six significant
/// digits, dot decimal separator, no locale.
pub fn render_csv(result: &SweepResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in &result.points {
        let e = &p.estimate;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_sig(p.sweep_value, 6),
            p.mode,
            fmt_sig(e.p_hat, 6),
            fmt_sig(e.ci_low, 6),
            fmt_sig(e.ci_high, 6),
            e.n_trials,
            e.seed,
        ));
    }
    out
}

/// Sidecar document stored next to the CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub csv: String,
    pub generator: String,
    pub config: RunConfig,
    pub provenance: BTreeMap<String, String>,
    /// Per-(value, mode) geometry digests; equal digests across modes at one
    /// value certify the common-random-number contract.
    pub geometry_digests: BTreeMap<String, String>,
    /// Per-(value, mode) counts of trials that took a documented degenerate
    /// path (e.g. RE placement falling back to the EE rule).
    pub flagged_trials: BTreeMap<String, u64>,
}

impl Sidecar {
    pub fn new(result: &SweepResult, config: &RunConfig, csv_name: &str) -> Self {
        let mut geometry_digests = BTreeMap::new();
        let mut flagged_trials = BTreeMap::new();
        for p in &result.points {
            let key = format!("{}|{}", fmt_sig(p.sweep_value, 6), p.mode);
            geometry_digests.insert(key.clone(), format!("{:016x}", p.geometry_digest));
            flagged_trials.insert(key, p.flagged_trials);
        }
        Sidecar {
            csv: csv_name.to_string(),
            generator: format!("ruralcov {}", env!("CARGO_PKG_VERSION")),
            config: config.clone(),
            provenance: config.provenance(),
            geometry_digests,
            flagged_trials,
        }
    }
}

/// Path of the metadata sidecar for a given CSV path.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    let mut name = csv_path.as_os_str().to_os_string();
    name.push(".meta.toml");
    PathBuf::from(name)
}

/// Writes the CSV and its metadata sidecar.
pub fn emit_results(
    result: &SweepResult,
    config: &RunConfig,
    csv_path: &Path,
) -> SimResult<()> {
    let csv = render_csv(result);
    let write = |path: &Path, body: &str| -> SimResult<()> {
        let mut file = std::fs::File::create(path).map_err(|e| {
            SimError::Config(format!("cannot write `{}`: {e}", path.display()))
        })?;
        file.write_all(body.as_bytes())
            .map_err(|e| SimError::Config(format!("cannot write `{}`: {e}", path.display())))?;
        Ok(())
    };
    write(csv_path, &csv)?;
    let csv_name = csv_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| csv_path.display().to_string());
    let sidecar = Sidecar::new(result, config, &csv_name);
    let body = toml::to_string_pretty(&sidecar)
        .map_err(|e| SimError::Config(format!("sidecar serialization: {e}")))?;
    write(&sidecar_path(csv_path), &body)?;
    Ok(())
}

/// Reads the resolved configuration back out of a sidecar file, which must
/// suffice to reproduce the CSV bit-exactly.
pub fn config_from_sidecar(path: &Path) -> SimResult<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SimError::Config(format!("cannot read `{}`: {e}", path.display())))?;
    let sidecar: Sidecar =
        toml::from_str(&text).map_err(|e| SimError::Config(format!("sidecar parse: {e}")))?;
    Ok(sidecar.config)
}
