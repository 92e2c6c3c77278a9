//! Noiseless transmit→receive loopback: isolates the transceiver's own
//! energy-dependent distortion (compression saturation, finite-grid
//! scattering error) from any channel effect.

use signal_core::dbm_to_watts;

use crate::config::{carriers_for_eta, ExperimentConfig};
use crate::report::ResultRow;
use crate::runner::{
    aggregate_point, build_modem, burst_target_energy, calibration_frames, loopback_frame,
    run_frames, system_params,
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
    let modulation = cfg.modem.modulation;

    for eta in cfg.etas() {
        let n_carriers = carriers_for_eta(eta)?;
        let modem = build_modem(&params, &cfg.modem, eta, n_carriers, modulation, 0.0)?;
        let cal = calibration_frames(cfg.seed, exp, n_carriers);
        for &power_dbm in &cfg.power_sweep_dbm {
            let target = burst_target_energy(&params, &modem, dbm_to_watts(power_dbm));
            let scale = modem.calibrate_scale(target, &cal)?;
            let frames = run_frames(cfg.n_frames, |f| {
                loopback_frame(&modem, scale, cfg.seed, exp, f)
            })?;
            let agg = aggregate_point(&frames);
            rows.push(ResultRow {
                experiment: cfg.experiment.name().to_string(),
                scenario: "loopback".to_string(),
                modulation: modulation.name().to_string(),
                eta,
                n_carriers,
                power_dbm,
                input_index: None,
                q_evm_db: agg.q_evm_db,
                q_ber_db: agg.q_ber_db,
                mi_bits: None,
                se_bits_per_s_hz: None,
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
    Ok(())
}
