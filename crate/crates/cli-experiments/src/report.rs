//! Result rows, CSV persistence, and the run manifest.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::RunError;

/// One aggregated sweep point.  Optional fields stay empty in the CSV for
/// experiments that do not produce them; populated numeric fields are
/// always finite.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub experiment: String,
    /// fibre | awgn | loopback | dbp_ideal | dbp_pa | control_ideal |
    /// control_pa | report
    pub scenario: String,
    pub modulation: String,
    pub eta: f64,
    pub n_carriers: usize,
    pub power_dbm: f64,
    /// Input-realisation index (entropy study only).
    pub input_index: Option<usize>,
    pub q_evm_db: f64,
    pub q_ber_db: f64,
    pub mi_bits: Option<f64>,
    pub se_bits_per_s_hz: Option<f64>,
    pub h_joint_bits: Option<f64>,
    pub h_individual_bits: Option<f64>,
    pub epsilon_gauss: Option<f64>,
    pub epsilon_knn: Option<f64>,
    pub clamp_count: u64,
    pub unimodularity_max: f64,
    pub n_frames: usize,
}

impl ResultRow {
    /// All populated numeric fields must be finite for persistence.
    pub fn is_finite(&self) -> bool {
        let opt = |v: &Option<f64>| v.map_or(true, f64::is_finite);
        self.eta.is_finite()
            && self.power_dbm.is_finite()
            && self.q_evm_db.is_finite()
            && self.q_ber_db.is_finite()
            && self.unimodularity_max.is_finite()
            && opt(&self.mi_bits)
            && opt(&self.se_bits_per_s_hz)
            && opt(&self.h_joint_bits)
            && opt(&self.h_individual_bits)
            && opt(&self.epsilon_gauss)
            && opt(&self.epsilon_knn)
    }
}

/// Reproducibility sidecar written next to each CSV.  Timing lives here and
/// only here: the CSV must be byte-identical across reruns of one seed.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub experiment: String,
    pub seed: u64,
    pub desk_scale: bool,
    pub config_sha256: String,
    pub git_revision: Option<String>,
    pub n_rows: usize,
    pub wall_time_seconds: f64,
}

/// Where one run's outputs land.
pub struct Reporter {
    csv_path: PathBuf,
    manifest_path: PathBuf,
}

impl Reporter {
    pub fn new(out_dir: &Path, experiment_name: &str) -> Result<Self, RunError> {
        std::fs::create_dir_all(out_dir).map_err(|e| {
            RunError::config(format!(
                "cannot create output directory {}: {e}",
                out_dir.display()
            ))
        })?;
        Ok(Self {
            csv_path: out_dir.join(format!("{experiment_name}.csv")),
            manifest_path: out_dir.join(format!("{experiment_name}_manifest.json")),
        })
    }

    pub fn csv_path(&self) -> &Path {
        &self.csv_path
    }

    /// Persist rows (header + one line per row, deterministic field order).
    pub fn write_rows(&self, rows: &[ResultRow]) -> Result<(), RunError> {
        for row in rows {
            if !row.is_finite() {
                return Err(RunError::numerics(format!(
                    "non-finite result for {} {} at {} dBm",
                    row.scenario, row.modulation, row.power_dbm
                )));
            }
        }
        let mut writer = csv::Writer::from_path(&self.csv_path).map_err(|e| {
            RunError::config(format!("cannot write {}: {e}", self.csv_path.display()))
        })?;
        for row in rows {
            writer
                .serialize(row)
                .map_err(|e| RunError::config(format!("CSV serialisation failed: {e}")))?;
        }
        writer
            .flush()
            .map_err(|e| RunError::config(format!("CSV flush failed: {e}")))?;
        Ok(())
    }

    /// Persist the manifest after the CSV.
    pub fn write_manifest(
        &self,
        cfg: &ExperimentConfig,
        n_rows: usize,
        wall_time_seconds: f64,
    ) -> Result<(), RunError> {
        let canonical = serde_json::to_vec(cfg)
            .map_err(|e| RunError::config(format!("config serialisation failed: {e}")))?;
        let manifest = Manifest {
            experiment: cfg.experiment.name().to_string(),
            seed: cfg.seed,
            desk_scale: cfg.desk_scale,
            config_sha256: hex(&Sha256::digest(&canonical)),
            git_revision: git_revision(),
            n_rows,
            wall_time_seconds,
        };
        let mut file = std::fs::File::create(&self.manifest_path).map_err(|e| {
            RunError::config(format!(
                "cannot write {}: {e}",
                self.manifest_path.display()
            ))
        })?;
        let text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| RunError::config(format!("manifest serialisation failed: {e}")))?;
        file.write_all(text.as_bytes())
            .and_then(|_| file.write_all(b"\n"))
            .map_err(|e| RunError::config(format!("manifest write failed: {e}")))?;
        Ok(())
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Best-effort: record the source revision if the binary runs inside a git
/// checkout; absent otherwise.
fn git_revision() -> Option<String> {
    let out = std::process::Command::new("git")
        .args(["rev-parse", "HEAD"])
        .output()
        .ok()?;
    if !out.status.success() {
        return None;
    }
    let rev = String::from_utf8(out.stdout).ok()?.trim().to_string();
    (!rev.is_empty()).then_some(rev)
}
