//! End-to-end transmitter → receiver checks without a channel in between
//! (and with an ideal spectral-rotation channel for the pre-compensation
//! bookkeeping test). Thresholds are frozen from reference-implementation
//! floors with generous margin.

use modem::{cross32, hard_decision, CarrierShape, Modem, ModemConfig, Modulation};
use nft::{advance, scatter_fast, synthesise};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signal_core::C64;

const OVERSAMPLE: usize = 8;

/// Normalised grid step of the reference system: 448 GS/s sampling against
/// the dispersion time scale of a 960 km link with β₂ = −21.5 ps²/km.
fn grid_step() -> f64 {
    let dt = 1.0 / 448e9;
    let t_scale = (21.5e-27f64 * 960e3 / 2.0).sqrt();
    dt / t_scale
}

fn make_modem(eta: f64, n_carriers: usize, modulation: Modulation, link_span: f64) -> Modem {
    let cfg = ModemConfig {
        shape: CarrierShape {
            n_carriers,
            oversample: OVERSAMPLE,
            eta,
        },
        modulation,
        pdc_fraction: 0.5,
        link_span,
    };
    Modem::new(cfg, grid_step()).expect("valid modem geometry")
}

fn random_symbols(rng: &mut ChaCha8Rng, n: usize) -> (Vec<C64>, Vec<usize>) {
    let points = cross32();
    let idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..32)).collect();
    let syms = idx.iter().map(|&i| points[i]).collect();
    (syms, idx)
}

fn evm(y1: &[C64], y2: &[C64], x1: &[C64], x2: &[C64]) -> f64 {
    let err: f64 = y1
        .iter()
        .zip(x1)
        .chain(y2.iter().zip(x2))
        .map(|(y, x)| (y - x).norm_sqr())
        .sum();
    let sig: f64 = x1.iter().chain(x2).map(|x| x.norm_sqr()).sum();
    (err / sig).sqrt()
}

fn loopback_evm(eta: f64, n_carriers: usize, modulation: Modulation, seed: u64) -> f64 {
    let modem = make_modem(eta, n_carriers, modulation, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x1, _) = random_symbols(&mut rng, n_carriers);
    let (x2, _) = random_symbols(&mut rng, n_carriers);
    let s = 0.2;
    let tx = modem.transmit(&x1, &x2, s).unwrap();
    let rx = modem.receive(&tx.q1, &tx.q2, s).unwrap();
    assert_eq!(rx.diag.clamp.count, 0, "no saturation at this drive level");
    evm(&rx.y1, &rx.y2, &x1, &x2)
}

#[test]
fn b_loopback_wide_guard_is_transparent() {
    let e = loopback_evm(4.0, 70, Modulation::B, 11);
    assert!(e < 1e-7, "EVM {e:.3e}");
}

#[test]
fn qc_loopback_wide_guard_is_transparent() {
    let e = loopback_evm(4.0, 70, Modulation::Qc, 12);
    assert!(e < 1e-6, "EVM {e:.3e}");
}

#[test]
fn b_loopback_guard_boundary_eta_two() {
    let e = loopback_evm(2.0, 210, Modulation::B, 13);
    assert!(e < 5e-4, "EVM {e:.3e}");
}

#[test]
fn b_loopback_truncated_window_eta_one_and_a_half() {
    let modem = make_modem(1.5, 420, Modulation::B, 0.0);
    assert!(modem.config().shape.transmit_len() < modem.grid().n);
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (x1, _) = random_symbols(&mut rng, 420);
    let (x2, _) = random_symbols(&mut rng, 420);
    let tx = modem.transmit(&x1, &x2, 0.2).unwrap();
    assert!(
        tx.truncation_loss > 0.0 && tx.truncation_loss < 1e-3,
        "truncation loss {:.3e}",
        tx.truncation_loss
    );
    let rx = modem.receive(&tx.q1, &tx.q2, 0.2).unwrap();
    let e = evm(&rx.y1, &rx.y2, &x1, &x2);
    assert!(e < 1e-3, "EVM {e:.3e}");
}

#[test]
fn b_loopback_truncated_window_eta_one_point_two() {
    let e = loopback_evm(1.2, 1050, Modulation::B, 15);
    assert!(e < 1e-3, "EVM {e:.3e}");
}

#[test]
fn symbol_decisions_survive_the_loopback() {
    let modem = make_modem(4.0, 70, Modulation::B, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let (x1, i1) = random_symbols(&mut rng, 70);
    let (x2, i2) = random_symbols(&mut rng, 70);
    let tx = modem.transmit(&x1, &x2, 0.2).unwrap();
    let rx = modem.receive(&tx.q1, &tx.q2, 0.2).unwrap();
    let points = cross32();
    for k in 0..70 {
        assert_eq!(hard_decision(rx.y1[k], &points), i1[k]);
        assert_eq!(hard_decision(rx.y2[k], &points), i2[k]);
    }
}

/// Transmitter pre-compensation + ideal dispersive channel + receiver
/// post-compensation must cancel exactly: the transmitter advances the
/// spectrum by half the link, the channel applies the full negative
/// rotation, the receiver supplies the remaining half.
#[test]
fn split_compensation_brackets_an_ideal_channel() {
    let modem = make_modem(4.0, 70, Modulation::B, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (x1, i1) = random_symbols(&mut rng, 70);
    let (x2, i2) = random_symbols(&mut rng, 70);
    let s = 0.2;
    let tx = modem.transmit(&x1, &x2, s).unwrap();

    let grid = modem.grid();
    let lambdas = grid.lambdas();
    let mut data = scatter_fast(&tx.q1, &tx.q2, grid);
    advance(&mut data.b1, &lambdas, -1.0);
    advance(&mut data.b2, &lambdas, -1.0);
    let (q1, q2) = synthesise(&data.a, &data.b1, &data.b2, grid).unwrap();

    let rx = modem.receive(&q1, &q2, s).unwrap();
    let e = evm(&rx.y1, &rx.y2, &x1, &x2);
    assert!(e < 5e-3, "EVM {e:.3e}");
    let points = cross32();
    for k in 0..70 {
        assert_eq!(hard_decision(rx.y1[k], &points), i1[k]);
        assert_eq!(hard_decision(rx.y2[k], &points), i2[k]);
    }
}

#[test]
fn joint_map_burst_energy_identity_and_calibration() {
    let modem = make_modem(4.0, 70, Modulation::B, 0.0);
    let target = 0.5;
    let s = modem.calibrate_scale(target, &[]).unwrap();
    let grid = modem.grid();
    let shape = modem.config().shape;
    let coeff =
        (grid.dlam() / std::f64::consts::PI) * (grid.n as f64 / shape.data_len() as f64) * s * s;

    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut mean = 0.0;
    let n_frames = 16;
    for _ in 0..n_frames {
        let (x1, _) = random_symbols(&mut rng, 70);
        let (x2, _) = random_symbols(&mut rng, 70);
        let tx = modem.transmit(&x1, &x2, s).unwrap();
        // Per-frame identity: burst energy is exactly quadratic in the
        // symbols for the joint map.
        let sum_x: f64 = x1.iter().chain(&x2).map(|x| x.norm_sqr()).sum();
        let want = coeff * sum_x;
        assert!(
            (tx.norm_energy - want).abs() < 1e-9 * want,
            "energy identity: {} vs {}",
            tx.norm_energy,
            want
        );
        mean += tx.norm_energy;
    }
    mean /= n_frames as f64;
    // Ensemble average converges on the calibration target (the symbol
    // power fluctuates frame to frame, so the tolerance is statistical).
    assert!(
        (mean - target).abs() < 0.05 * target,
        "mean energy {mean} vs target {target}"
    );
}

#[test]
fn per_component_calibration_hits_the_target_on_its_ensemble() {
    let modem = make_modem(4.0, 70, Modulation::Qc, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let frames: Vec<(Vec<C64>, Vec<C64>)> = (0..12)
        .map(|_| {
            let (x1, _) = random_symbols(&mut rng, 70);
            let (x2, _) = random_symbols(&mut rng, 70);
            (x1, x2)
        })
        .collect();
    let target = 1.5;
    let s = modem.calibrate_scale(target, &frames).unwrap();
    let mean: f64 = frames
        .iter()
        .map(|(x1, x2)| modem.transmit(x1, x2, s).unwrap().norm_energy)
        .sum::<f64>()
        / frames.len() as f64;
    assert!(
        (mean - target).abs() < 1e-8 * target,
        "mean energy {mean} vs target {target} at scale {s}"
    );
}

/// Driving the compression map deep into saturation must degrade the
/// loopback gracefully — orders of magnitude above the shallow floor but
/// finite, with no spurious clamp reports (the measured spectrum of a real
/// waveform always stays inside the unit bound) — and past the
/// representable saturation depth the transmitter must refuse the frame
/// with a clean error rather than emit garbage.
#[test]
fn deep_saturation_degrades_gracefully_then_refuses() {
    let modem = make_modem(4.0, 70, Modulation::B, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (x1, _) = random_symbols(&mut rng, 70);
    let (x2, _) = random_symbols(&mut rng, 70);

    let run = |s: f64| -> (f64, usize) {
        let tx = modem.transmit(&x1, &x2, s).unwrap();
        let rx = modem.receive(&tx.q1, &tx.q2, s).unwrap();
        (evm(&rx.y1, &rx.y2, &x1, &x2), rx.diag.clamp.count)
    };

    let (shallow, shallow_clamps) = run(0.2);
    assert!(shallow < 1e-7, "shallow floor {shallow:.3e}");
    assert_eq!(shallow_clamps, 0);

    let (deep, deep_clamps) = run(2.0);
    assert!(
        deep > 0.05 && deep < 0.8,
        "deep-drive EVM {deep:.3e} out of the expected degradation band"
    );
    assert_eq!(deep_clamps, 0);

    assert!(
        modem.transmit(&x1, &x2, 4.0).is_err(),
        "extreme drive must be refused"
    );
}

#[test]
fn geometry_validation_rejects_bad_configs() {
    let bad_eta = ModemConfig {
        shape: CarrierShape {
            n_carriers: 70,
            oversample: 8,
            eta: 1.0,
        },
        modulation: Modulation::B,
        pdc_fraction: 0.5,
        link_span: 0.0,
    };
    assert!(Modem::new(bad_eta, grid_step()).is_err());

    let no_carriers = ModemConfig {
        shape: CarrierShape {
            n_carriers: 0,
            oversample: 8,
            eta: 4.0,
        },
        modulation: Modulation::B,
        pdc_fraction: 0.5,
        link_span: 0.0,
    };
    assert!(Modem::new(no_carriers, grid_step()).is_err());
}
