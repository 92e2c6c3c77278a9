//! Experiment configuration: JSON document, key-path overrides, validation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::RunError;

/// Which study a configuration drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    CompareBQc,
    EtaSweep,
    EntropyStudy,
    B2bDistortion,
    DbpResidual,
}

impl ExperimentKind {
    /// Stable numeric id, part of every derived RNG key.
    pub fn id(self) -> u16 {
        match self {
            ExperimentKind::CompareBQc => 1,
            ExperimentKind::EtaSweep => 2,
            ExperimentKind::EntropyStudy => 3,
            ExperimentKind::B2bDistortion => 4,
            ExperimentKind::DbpResidual => 5,
        }
    }

    /// Snake-case name used in file names and CSV rows.
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CompareBQc => "compare_b_qc",
            ExperimentKind::EtaSweep => "eta_sweep",
            ExperimentKind::EntropyStudy => "entropy_study",
            ExperimentKind::B2bDistortion => "b2b_distortion",
            ExperimentKind::DbpResidual => "dbp_residual",
        }
    }
}

/// Which scattering coefficient carries data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulationKind {
    B,
    Qc,
}

impl ModulationKind {
    pub fn name(self) -> &'static str {
        match self {
            ModulationKind::B => "b",
            ModulationKind::Qc => "qc",
        }
    }
}

/// Fibre link geometry and noise switches.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LinkSettings {
    /// Number of amplified spans.
    pub n_spans: usize,
    /// Span length in kilometres.
    pub span_km: f64,
    /// Split-step size in kilometres for forward propagation.
    pub step_km: f64,
    /// Inject amplifier noise.
    pub ase: bool,
}

impl Default for LinkSettings {
    fn default() -> Self {
        Self {
            n_spans: 12,
            span_km: 80.0,
            step_km: 0.5,
            ase: true,
        }
    }
}

/// Multiplexer geometry and modulation choice.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModemSettings {
    pub modulation: ModulationKind,
    /// Symbol-duration overhead ratio (burst duration / payload duration).
    pub eta: f64,
    /// Carriers per polarisation.
    pub n_carriers: usize,
    /// Samples per carrier in the payload band.
    pub oversample: usize,
    /// Fraction of the link rotation compensated at the transmitter.
    pub pdc_fraction: f64,
}

impl Default for ModemSettings {
    fn default() -> Self {
        Self {
            modulation: ModulationKind::B,
            eta: 4.0,
            n_carriers: 70,
            oversample: 8,
            pdc_fraction: 0.5,
        }
    }
}

/// Extra knobs for the entropy study.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EntropySettings {
    /// Independent payload realisations.
    pub n_inputs: usize,
    /// Noise realisations per payload.
    pub n_noise: usize,
    /// Split-step size in kilometres for the noise-ensemble propagation.
    pub step_km: f64,
    /// Carriers in the adjacent-carrier dependence block.
    pub block_carriers: usize,
}

impl Default for EntropySettings {
    fn default() -> Self {
        Self {
            n_inputs: 20,
            n_noise: 1 << 14,
            step_km: 4.0,
            block_carriers: 10,
        }
    }
}

/// Extra knobs for the backpropagation-residual study.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DbpSettings {
    /// Forward-propagation split step (km); finer than the equaliser's.
    pub forward_step_km: f64,
    /// Per-span backpropagation split step (km).
    pub backward_step_km: f64,
    /// Single-pass path-averaged backpropagation split step (km).
    pub pa_step_km: f64,
    /// Also run the zero-nonlinearity control rows.
    pub linear_control: bool,
}

impl Default for DbpSettings {
    fn default() -> Self {
        Self {
            forward_step_km: 0.05,
            backward_step_km: 0.1,
            pa_step_km: 0.5,
            linear_control: true,
        }
    }
}

/// One experiment run, as parsed from a JSON document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub link: LinkSettings,
    #[serde(default)]
    pub modem: ModemSettings,
    /// Launch powers in dBm, strictly increasing.
    pub power_sweep_dbm: Vec<f64>,
    /// Frames per sweep point (ignored by the entropy study, which uses
    /// `entropy.n_inputs` × `entropy.n_noise`).
    pub n_frames: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub desk_scale: bool,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Overhead ratios for the sweep experiments (eta_sweep, b2b).
    #[serde(default)]
    pub eta_list: Option<Vec<f64>>,
    #[serde(default)]
    pub entropy: EntropySettings,
    #[serde(default)]
    pub dbp: DbpSettings,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

/// Baseline carrier count at unit payload duration; carrier counts for the
/// overhead sweep follow `n_carriers = CARRIER_BUDGET / (eta - 1)` so that
/// every configuration occupies the same bandwidth-time product.
pub const CARRIER_BUDGET: f64 = 210.0;

/// Carrier count for an overhead ratio under the constant bandwidth-time
/// budget, or an error when it is not an integer.
pub fn carriers_for_eta(eta: f64) -> Result<usize, RunError> {
    if eta <= 1.0 {
        return Err(RunError::config(format!(
            "overhead ratio must exceed 1, got {eta}"
        )));
    }
    let exact = CARRIER_BUDGET / (eta - 1.0);
    let rounded = exact.round();
    if (exact - rounded).abs() > 1e-9 * exact.max(1.0) {
        return Err(RunError::config(format!(
            "overhead ratio {eta} gives a non-integral carrier count {exact:.4}"
        )));
    }
    Ok(rounded as usize)
}

impl ExperimentConfig {
    /// Built-in defaults for one experiment kind (used when no config file
    /// is given; also the base the documentation examples start from).
    pub fn defaults(kind: ExperimentKind) -> Self {
        let mut cfg = Self {
            experiment: kind,
            link: LinkSettings::default(),
            modem: ModemSettings::default(),
            power_sweep_dbm: vec![-8.0, -6.0, -4.0, -2.0],
            n_frames: 1000,
            seed: 0,
            desk_scale: false,
            output_dir: default_output_dir(),
            eta_list: None,
            entropy: EntropySettings::default(),
            dbp: DbpSettings::default(),
        };
        match kind {
            ExperimentKind::CompareBQc => {}
            ExperimentKind::EtaSweep => {
                cfg.power_sweep_dbm = vec![-10.0, -8.0, -6.0, -4.0, -2.0];
                cfg.n_frames = 500;
                cfg.eta_list = Some(vec![4.0, 2.0, 1.5, 1.2]);
            }
            ExperimentKind::EntropyStudy => {
                cfg.power_sweep_dbm = vec![-9.0, -6.4, -3.75, -1.0];
                cfg.modem.eta = 2.0;
                cfg.modem.n_carriers = 210;
                cfg.n_frames = 1;
            }
            ExperimentKind::B2bDistortion => {
                // Chosen to span 20 dB of burst energy up to just below the
                // compression refusal knee at eta = 4 and 2.
                cfg.power_sweep_dbm = vec![-13.1, -9.1, -5.1, -1.1, 2.9];
                cfg.n_frames = 100;
                cfg.eta_list = Some(vec![4.0, 2.0]);
                cfg.link.ase = false;
            }
            ExperimentKind::DbpResidual => {
                cfg.power_sweep_dbm = vec![-10.0, -7.0, -4.0, -1.0, 2.0];
                cfg.n_frames = 10;
                cfg.link.ase = false;
            }
        }
        cfg
    }

    /// Shrink statistical weight to the desk-scale presets.
    pub fn apply_desk_scale(&mut self) {
        if !self.desk_scale {
            return;
        }
        match self.experiment {
            ExperimentKind::CompareBQc => self.n_frames = self.n_frames.min(200),
            ExperimentKind::EtaSweep => self.n_frames = self.n_frames.min(100),
            ExperimentKind::EntropyStudy => {
                self.entropy.n_inputs = self.entropy.n_inputs.min(8);
                self.entropy.n_noise = self.entropy.n_noise.min(1 << 12);
            }
            ExperimentKind::B2bDistortion => self.n_frames = self.n_frames.min(20),
            ExperimentKind::DbpResidual => self.n_frames = self.n_frames.min(4),
        }
    }

    /// Check the cross-field invariants a serde parse cannot see.
    pub fn validate(&self) -> Result<(), RunError> {
        if self.power_sweep_dbm.is_empty() {
            return Err(RunError::config("power sweep must not be empty"));
        }
        if !self
            .power_sweep_dbm
            .windows(2)
            .all(|w| w[0] < w[1] && w[0].is_finite() && w[1].is_finite())
            || !self.power_sweep_dbm[0].is_finite()
        {
            return Err(RunError::config(
                "power sweep must be finite and strictly increasing",
            ));
        }
        if self.n_frames == 0 {
            return Err(RunError::config("n_frames must be positive"));
        }
        if self.modem.eta <= 1.0 || !self.modem.eta.is_finite() {
            return Err(RunError::config(format!(
                "modem overhead ratio must exceed 1, got {}",
                self.modem.eta
            )));
        }
        if self.modem.n_carriers == 0 {
            return Err(RunError::config("modem needs at least one carrier"));
        }
        if self.modem.oversample < 2 {
            return Err(RunError::config("oversample factor must be at least 2"));
        }
        if !(0.0..=1.0).contains(&self.modem.pdc_fraction) {
            return Err(RunError::config(
                "pre-compensation fraction must lie in [0, 1]",
            ));
        }
        if self.link.n_spans == 0 || self.link.span_km <= 0.0 || self.link.step_km <= 0.0 {
            return Err(RunError::config("link geometry must be positive"));
        }
        if let Some(etas) = &self.eta_list {
            if etas.is_empty() {
                return Err(RunError::config("eta list must not be empty"));
            }
            for &eta in etas {
                carriers_for_eta(eta)?;
            }
        }
        if matches!(self.experiment, ExperimentKind::EntropyStudy) {
            if !self.link.ase {
                return Err(RunError::config(
                    "the entropy study conditions on amplifier noise; link.ase must stay on",
                ));
            }
            if self.entropy.n_inputs == 0 || self.entropy.n_noise < 2 {
                return Err(RunError::config(
                    "entropy study needs at least 1 input and 2 noise realisations",
                ));
            }
            if self.entropy.block_carriers == 0
                || self.entropy.block_carriers > self.modem.n_carriers
            {
                return Err(RunError::config(
                    "adjacent-carrier block must fit inside the carrier count",
                ));
            }
            if self.entropy.step_km <= 0.0 {
                return Err(RunError::config("entropy step size must be positive"));
            }
        }
        if matches!(self.experiment, ExperimentKind::DbpResidual)
            && (self.dbp.forward_step_km <= 0.0
                || self.dbp.backward_step_km <= 0.0
                || self.dbp.pa_step_km <= 0.0)
        {
            return Err(RunError::config("backpropagation step sizes must be positive"));
        }
        Ok(())
    }

    /// Overhead ratios for the sweep experiments, falling back to the
    /// built-in defaults for the kind.
    pub fn etas(&self) -> Vec<f64> {
        if let Some(list) = &self.eta_list {
            return list.clone();
        }
        match self.experiment {
            ExperimentKind::B2bDistortion => vec![4.0, 2.0],
            _ => vec![4.0, 2.0, 1.5, 1.2],
        }
    }
}

/// Load a JSON config document from disk.
pub fn load_document(path: &Path) -> Result<serde_json::Value, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| RunError::config(format!("config {} is not valid JSON: {e}", path.display())))
}

/// Apply `--key.path value` overrides onto a JSON document.  Kebab-case
/// segments map onto the snake_case keys of the schema; values are parsed
/// as JSON scalars, falling back to strings.
pub fn apply_overrides(
    doc: &mut serde_json::Value,
    overrides: &[(String, String)],
) -> Result<(), RunError> {
    for (path, raw) in overrides {
        let segments: Vec<String> = path.split('.').map(|s| s.replace('-', "_")).collect();
        if segments.iter().any(|s| s.is_empty()) {
            return Err(RunError::config(format!("malformed override key '{path}'")));
        }
        let mut node = &mut *doc;
        for (i, seg) in segments.iter().enumerate() {
            let obj = node.as_object_mut().ok_or_else(|| {
                RunError::config(format!(
                    "override '{path}' descends through a non-object at '{}'",
                    segments[..i].join(".")
                ))
            })?;
            node = obj
                .entry(seg.clone())
                .or_insert(serde_json::Value::Null);
            if i + 1 == segments.len() {
                let value = serde_json::from_str(raw)
                    .unwrap_or_else(|_| serde_json::Value::String(raw.clone()));
                *node = value;
            } else if node.is_null() {
                *node = serde_json::Value::Object(serde_json::Map::new());
            }
        }
    }
    Ok(())
}

/// Turn a JSON document into a validated config.
pub fn from_document(doc: serde_json::Value) -> Result<ExperimentConfig, RunError> {
    let cfg: ExperimentConfig = serde_json::from_value(doc)
        .map_err(|e| RunError::config(format!("config does not match the schema: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}
