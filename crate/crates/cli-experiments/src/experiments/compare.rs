//! Modulation comparison: joint-compression (`b`) versus per-component
//! (`qc`) mapping over a launch-power sweep, through both the amplified
//! fibre link and a back-to-back channel with noise matched to the link's
//! accumulated amplifier noise.

use signal_core::dbm_to_watts;

use crate::config::{ExperimentConfig, ModulationKind};
use crate::report::ResultRow;
use crate::runner::{
    aggregate_point, build_modem, burst_target_energy, calibration_frames, fibre_frame,
    matched_noise_frame, run_frames, system_params,
};
use crate::RunError;

pub fn run(cfg: &ExperimentConfig) -> (Vec<ResultRow>, Result<(), RunError>) {
    let mut rows = Vec::new();
    let result = drive(cfg, &mut rows);
    (rows, result)
}

fn drive(cfg: &ExperimentConfig, rows: &mut Vec<ResultRow>) -> Result<(), RunError> {
    let params = system_params(&cfg.link);
    let exp = cfg.experiment.id();
    let eta = cfg.modem.eta;
    let n_carriers = cfg.modem.n_carriers;
    let step_m = cfg.link.step_km * 1e3;
    let cal = calibration_frames(cfg.seed, exp, n_carriers);

    for scenario in ["fibre", "awgn"] {
        for modulation in [ModulationKind::B, ModulationKind::Qc] {
            let link_fraction = if scenario == "fibre" { 1.0 } else { 0.0 };
            let modem = build_modem(&params, &cfg.modem, eta, n_carriers, modulation, link_fraction)?;
            for &power_dbm in &cfg.power_sweep_dbm {
                let target = burst_target_energy(&params, &modem, dbm_to_watts(power_dbm));
                let scale = modem.calibrate_scale(target, &cal)?;
                let frames = run_frames(cfg.n_frames, |f| {
                    if scenario == "fibre" {
                        fibre_frame(
                            &modem, &params, step_m, cfg.link.ase, scale, cfg.seed, exp, f,
                        )
                    } else {
                        matched_noise_frame(&modem, &params, scale, cfg.seed, exp, f)
                    }
                })?;
                let agg = aggregate_point(&frames);
                rows.push(ResultRow {
                    experiment: cfg.experiment.name().to_string(),
                    scenario: scenario.to_string(),
                    modulation: modulation.name().to_string(),
                    eta,
                    n_carriers,
                    power_dbm,
                    input_index: None,
                    q_evm_db: agg.q_evm_db,
                    q_ber_db: agg.q_ber_db,
                    mi_bits: Some(agg.mi_bits),
                    se_bits_per_s_hz: Some(agg.mi_bits / eta),
                    h_joint_bits: None,
                    h_individual_bits: None,
                    epsilon_gauss: None,
                    epsilon_knn: None,
                    clamp_count: agg.clamp_count,
                    unimodularity_max: agg.unimodularity_max,
                    n_frames: agg.n_frames,
                });
            }
        }
    }
    Ok(())
}
