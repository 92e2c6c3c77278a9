//! Shared plumbing: modem construction, power calibration, the per-frame
//! channel pipelines, and sweep-point aggregation.

use channel::{add_white_noise, FibreSpan, SystemParams};
use modem::{cross32, CarrierShape, Modem, ModemConfig, Modulation};
use num_complex::Complex64 as C64;
use rand::Rng;
use rayon::prelude::*;

use crate::config::{LinkSettings, ModemSettings, ModulationKind};
use crate::rng::{stream, Purpose};
use crate::RunError;

/// Calibration ensemble size; enough to pin the ensemble-mean burst energy
/// for the per-component map (the joint map calibrates in closed form).
pub const CALIBRATION_FRAMES: usize = 16;

/// Physical constants with the configured link geometry applied.
pub fn system_params(link: &LinkSettings) -> SystemParams {
    let mut params = SystemParams::standard();
    params.n_spans = link.n_spans;
    params.span_length = link.span_km * 1e3;
    params
}

pub fn to_modulation(kind: ModulationKind) -> Modulation {
    match kind {
        ModulationKind::B => Modulation::B,
        ModulationKind::Qc => Modulation::Qc,
    }
}

/// Build a modem on the link's normalised grid.  `link_fraction` is the
/// normalised distance whose dispersive rotation the transceiver pair
/// splits (1 for transmission through the full link, 0 for back-to-back).
pub fn build_modem(
    params: &SystemParams,
    settings: &ModemSettings,
    eta: f64,
    n_carriers: usize,
    modulation: ModulationKind,
    link_fraction: f64,
) -> Result<Modem, RunError> {
    let cfg = ModemConfig {
        shape: CarrierShape {
            n_carriers,
            oversample: settings.oversample,
            eta,
        },
        modulation: to_modulation(modulation),
        pdc_fraction: settings.pdc_fraction,
        link_span: link_fraction,
    };
    Ok(Modem::new(cfg, params.grid_step())?)
}

/// Normalised-domain burst energy equivalent to launching `p_watts` per
/// polarisation over the burst duration.
pub fn burst_target_energy(params: &SystemParams, modem: &Modem, p_watts: f64) -> f64 {
    let t_burst = modem.config().shape.transmit_len() as f64 * params.dt();
    2.0 * p_watts * t_burst / (params.amplitude_scale().powi(2) * params.time_scale())
}

/// Draw one polarisation's payload from the 32-point constellation.
pub fn draw_symbols<R: Rng>(rng: &mut R, n: usize, points: &[C64]) -> Vec<C64> {
    (0..n).map(|_| points[rng.gen_range(0..points.len())]).collect()
}

/// Deterministic calibration ensemble shared by every sweep point of an
/// experiment (scale-independent, so reuse across powers is exact).
pub fn calibration_frames(
    seed: u64,
    experiment: u16,
    n_carriers: usize,
) -> Vec<(Vec<C64>, Vec<C64>)> {
    let points = cross32();
    (0..CALIBRATION_FRAMES)
        .map(|k| {
            let mut rng = stream(seed, experiment, k as u64, Purpose::Calibration, 0);
            let x1 = draw_symbols(&mut rng, n_carriers, &points);
            let x2 = draw_symbols(&mut rng, n_carriers, &points);
            (x1, x2)
        })
        .collect()
}

/// One frame's transmitted and recovered payload plus receiver diagnostics.
pub struct FrameResult {
    pub x1: Vec<C64>,
    pub x2: Vec<C64>,
    pub y1: Vec<C64>,
    pub y2: Vec<C64>,
    pub clamp_count: u64,
    pub unimodularity: f64,
}

/// Transmit → amplified multi-span fibre (optional in-line noise) → receive.
#[allow(clippy::too_many_arguments)]
pub fn fibre_frame(
    modem: &Modem,
    params: &SystemParams,
    step_m: f64,
    ase: bool,
    scale: f64,
    seed: u64,
    experiment: u16,
    frame: u64,
) -> Result<FrameResult, RunError> {
    let points = cross32();
    let mut srng = stream(seed, experiment, frame, Purpose::Symbols, 0);
    let n = modem.config().shape.n_carriers;
    let x1 = draw_symbols(&mut srng, n, &points);
    let x2 = draw_symbols(&mut srng, n, &points);

    let tx = modem.transmit(&x1, &x2, scale)?;
    let norm = params.normalisation();
    let mut q1 = tx.q1;
    let mut q2 = tx.q2;
    norm.to_physical(&mut q1);
    norm.to_physical(&mut q2);

    propagate_link(params, step_m, ase, seed, experiment, frame, &mut q1, &mut q2);

    norm.to_normalised(&mut q1);
    norm.to_normalised(&mut q2);
    let rx = modem.receive(&q1, &q2, scale)?;
    Ok(FrameResult {
        x1,
        x2,
        y1: rx.y1,
        y2: rx.y2,
        clamp_count: rx.diag.clamp.count as u64,
        unimodularity: rx.diag.unimodularity,
    })
}

/// Span-by-span propagation with per-span derived noise streams, so frame
/// results are independent of scheduling.
#[allow(clippy::too_many_arguments)]
pub fn propagate_link(
    params: &SystemParams,
    step_m: f64,
    ase: bool,
    seed: u64,
    experiment: u16,
    frame: u64,
    q1: &mut [C64],
    q2: &mut [C64],
) {
    let span = FibreSpan::new(
        q1.len(),
        params.dt(),
        params.span_length,
        step_m,
        params.beta2,
        params.gamma,
        params.alpha,
    );
    let gain = params.span_gain().sqrt();
    let sigma2 = params.ase_variance();
    for span_idx in 0..params.n_spans {
        span.propagate(q1, q2);
        for v in q1.iter_mut() {
            *v *= gain;
        }
        for v in q2.iter_mut() {
            *v *= gain;
        }
        if ase {
            let mut nrng = stream(
                seed,
                experiment,
                frame,
                Purpose::AmplifierNoise,
                span_idx as u32,
            );
            add_white_noise(q1, sigma2, &mut nrng);
            add_white_noise(q2, sigma2, &mut nrng);
        }
    }
}

/// Transmit → single lumped Gaussian-noise insertion matched to the link's
/// accumulated amplifier noise → receive.  The modem must be built with
/// `link_fraction = 0`.
pub fn matched_noise_frame(
    modem: &Modem,
    params: &SystemParams,
    scale: f64,
    seed: u64,
    experiment: u16,
    frame: u64,
) -> Result<FrameResult, RunError> {
    let points = cross32();
    let mut srng = stream(seed, experiment, frame, Purpose::Symbols, 0);
    let n = modem.config().shape.n_carriers;
    let x1 = draw_symbols(&mut srng, n, &points);
    let x2 = draw_symbols(&mut srng, n, &points);

    let tx = modem.transmit(&x1, &x2, scale)?;
    let norm = params.normalisation();
    let mut q1 = tx.q1;
    let mut q2 = tx.q2;
    norm.to_physical(&mut q1);
    norm.to_physical(&mut q2);

    let sigma2 = params.ase_variance_link();
    let mut nrng = stream(seed, experiment, frame, Purpose::MatchedNoise, 0);
    add_white_noise(&mut q1, sigma2, &mut nrng);
    add_white_noise(&mut q2, sigma2, &mut nrng);

    norm.to_normalised(&mut q1);
    norm.to_normalised(&mut q2);
    let rx = modem.receive(&q1, &q2, scale)?;
    Ok(FrameResult {
        x1,
        x2,
        y1: rx.y1,
        y2: rx.y2,
        clamp_count: rx.diag.clamp.count as u64,
        unimodularity: rx.diag.unimodularity,
    })
}

/// Transmit → receive with no channel in between (noiseless loopback).
pub fn loopback_frame(
    modem: &Modem,
    scale: f64,
    seed: u64,
    experiment: u16,
    frame: u64,
) -> Result<FrameResult, RunError> {
    let points = cross32();
    let mut srng = stream(seed, experiment, frame, Purpose::Symbols, 0);
    let n = modem.config().shape.n_carriers;
    let x1 = draw_symbols(&mut srng, n, &points);
    let x2 = draw_symbols(&mut srng, n, &points);

    let tx = modem.transmit(&x1, &x2, scale)?;
    let rx = modem.receive(&tx.q1, &tx.q2, scale)?;
    Ok(FrameResult {
        x1,
        x2,
        y1: rx.y1,
        y2: rx.y2,
        clamp_count: rx.diag.clamp.count as u64,
        unimodularity: rx.diag.unimodularity,
    })
}

/// Run `n_frames` independent frames in parallel with deterministic,
/// index-ordered collection.
pub fn run_frames<T, F>(n_frames: usize, frame_fn: F) -> Result<Vec<T>, RunError>
where
    T: Send,
    F: Fn(u64) -> Result<T, RunError> + Sync + Send,
{
    (0..n_frames as u64)
        .into_par_iter()
        .map(frame_fn)
        .collect()
}

/// Pooled statistics for one sweep point.
pub struct PointAggregate {
    pub q_evm_db: f64,
    pub q_ber_db: f64,
    pub mi_bits: f64,
    pub clamp_count: u64,
    pub unimodularity_max: f64,
    pub n_frames: usize,
}

/// Aggregate frame results: pooled EVM/decision metrics plus per-carrier
/// mutual information averaged over all carriers of both polarisations.
pub fn aggregate_point(frames: &[FrameResult]) -> PointAggregate {
    assert!(!frames.is_empty(), "no frames to aggregate");
    let points = cross32();
    let n_carriers = frames[0].x1.len();

    let mut all_x = Vec::with_capacity(frames.len() * 2 * n_carriers);
    let mut all_y = Vec::with_capacity(frames.len() * 2 * n_carriers);
    let mut clamp_count = 0u64;
    let mut unimodularity_max = 0.0f64;
    for f in frames {
        all_x.extend_from_slice(&f.x1);
        all_x.extend_from_slice(&f.x2);
        all_y.extend_from_slice(&f.y1);
        all_y.extend_from_slice(&f.y2);
        clamp_count += f.clamp_count;
        unimodularity_max = unimodularity_max.max(f.unimodularity);
    }

    let evm = metrics::error_vector_magnitude(&all_y, &all_x);
    let ser = metrics::symbol_error_rate(&all_y, &all_x, &points);
    let ber = metrics::bit_error_rate(ser, 5);

    // Per-carrier MI with an independently fitted gain/noise pair per
    // carrier, averaged over carriers and polarisations.
    let mi_sum: f64 = (0..2 * n_carriers)
        .into_par_iter()
        .map(|c| {
            let (pol_is_second, idx) = (c >= n_carriers, c % n_carriers);
            let x_c: Vec<C64> = frames
                .iter()
                .map(|f| if pol_is_second { f.x2[idx] } else { f.x1[idx] })
                .collect();
            let y_c: Vec<C64> = frames
                .iter()
                .map(|f| if pol_is_second { f.y2[idx] } else { f.y1[idx] })
                .collect();
            metrics::auxiliary_mi_bits(&y_c, &x_c, &points)
        })
        .sum();

    PointAggregate {
        q_evm_db: metrics::evm_q_db(evm),
        q_ber_db: metrics::q_factor_from_ber_db(ber),
        mi_bits: mi_sum / (2 * n_carriers) as f64,
        clamp_count,
        unimodularity_max,
        n_frames: frames.len(),
    }
}
