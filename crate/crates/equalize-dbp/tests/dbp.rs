//! Digital backpropagation against the simulated fibre link.

use channel::{Link, SystemParams};
use equalize_dbp::{
    align_common_phase, DigitalBackpropagation, NyquistTransceiver, PathAveragedBackpropagation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signal_core::C64;

const N_SYMBOLS: usize = 420;
const OVERSAMPLE: usize = 8;
const SYMBOL_RATE: f64 = 56e9;
const ROLLOFF: f64 = 0.01;

fn random_symbols(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n)
        .map(|_| C64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU))
        .collect()
}

fn evm(y1: &[C64], y2: &[C64], x1: &[C64], x2: &[C64]) -> f64 {
    let err: f64 = y1
        .iter()
        .zip(x1)
        .chain(y2.iter().zip(x2))
        .map(|(y, x)| (y - x).norm_sqr())
        .sum();
    let reference: f64 = x1.iter().chain(x2).map(|x| x.norm_sqr()).sum();
    (err / reference).sqrt()
}

struct Frame {
    x1: Vec<C64>,
    x2: Vec<C64>,
    q1: Vec<C64>,
    q2: Vec<C64>,
}

/// Shape a random dual-polarisation frame and run it through a noiseless
/// link stepped at `dz_fwd`.
fn propagate_frame(params: &SystemParams, power: f64, dz_fwd: f64, seed: u64) -> Frame {
    let trx = NyquistTransceiver::new(N_SYMBOLS, OVERSAMPLE, SYMBOL_RATE, ROLLOFF);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x1 = random_symbols(&mut rng, N_SYMBOLS);
    let x2 = random_symbols(&mut rng, N_SYMBOLS);
    let mut q1 = trx.shape(&x1, power);
    let mut q2 = trx.shape(&x2, power);
    let link = Link::new(params, q1.len(), dz_fwd, false);
    link.propagate(&mut q1, &mut q2, &mut rng);
    Frame { x1, x2, q1, q2 }
}

fn demodulate_aligned(f: &Frame, power: f64) -> (f64, f64) {
    let trx = NyquistTransceiver::new(N_SYMBOLS, OVERSAMPLE, SYMBOL_RATE, ROLLOFF);
    let mut y1 = trx.demodulate(&f.q1, power);
    let mut y2 = trx.demodulate(&f.q2, power);
    let phase = align_common_phase(&mut y1, &mut y2, &f.x1, &f.x2);
    (evm(&y1, &y2, &f.x1, &f.x2), phase)
}

#[test]
fn matched_step_backpropagation_inverts_a_noiseless_link() {
    let params = SystemParams::standard();
    let power = 1e-3;
    let dz = 400.0;
    let mut frame = propagate_frame(&params, power, dz, 21);
    let reference = {
        let trx = NyquistTransceiver::new(N_SYMBOLS, OVERSAMPLE, SYMBOL_RATE, ROLLOFF);
        (
            trx.shape(&frame.x1, power),
            trx.shape(&frame.x2, power),
        )
    };

    let dbp = DigitalBackpropagation::new(&params, frame.q1.len(), dz);
    dbp.equalize(&mut frame.q1, &mut frame.q2);

    let rms = (power * frame.q1.len() as f64).sqrt();
    let worst = frame
        .q1
        .iter()
        .zip(&reference.0)
        .chain(frame.q2.iter().zip(&reference.1))
        .map(|(a, b)| (a - b).norm())
        .fold(0.0_f64, f64::max);
    assert!(
        worst < 1e-9 * rms,
        "waveform residual {worst:.3e} vs launch rms {rms:.3e}"
    );

    let (evm_out, _) = demodulate_aligned(&frame, power);
    assert!(evm_out < 1e-10, "symbol-domain residual {evm_out:.3e}");
}

#[test]
fn linear_equalisation_is_exact_when_the_fibre_is_linear() {
    let mut params = SystemParams::standard();
    params.gamma = 0.0;
    let power = 1e-3;
    // Deliberately mismatched steps: linear operators commute, so the
    // equaliser must not depend on its discretisation.
    let mut frame = propagate_frame(&params, power, 800.0, 22);
    let dbp = DigitalBackpropagation::new(&params, frame.q1.len(), 3200.0);
    dbp.equalize(&mut frame.q1, &mut frame.q2);

    let (evm_out, _) = demodulate_aligned(&frame, power);
    assert!(evm_out < 1e-11, "dispersion-only residual {evm_out:.3e}");
}

#[test]
fn coarser_backpropagation_steps_degrade_gracefully() {
    let params = SystemParams::standard();
    let power = 1e-3;
    let dz_fwd = 200.0;
    let frame = propagate_frame(&params, power, dz_fwd, 23);

    let mut evms = Vec::new();
    for dz_bwd in [400.0, 3200.0] {
        let mut work = Frame {
            x1: frame.x1.clone(),
            x2: frame.x2.clone(),
            q1: frame.q1.clone(),
            q2: frame.q2.clone(),
        };
        let dbp = DigitalBackpropagation::new(&params, work.q1.len(), dz_bwd);
        dbp.equalize(&mut work.q1, &mut work.q2);
        let (e, _) = demodulate_aligned(&work, power);
        evms.push(e);
    }

    assert!(
        evms[0] < evms[1],
        "finer steps should equalise better: {:.3e} vs {:.3e}",
        evms[0],
        evms[1]
    );
    assert!(
        evms[0] < 1e-3,
        "half-step backpropagation residual {:.3e}",
        evms[0]
    );
}

#[test]
fn path_averaged_pass_beats_dispersion_compensation_alone() {
    let params = SystemParams::standard();
    let power = 5e-4;
    let dz_fwd = 400.0;
    let frame = propagate_frame(&params, power, dz_fwd, 24);

    let mut linear_only = Frame {
        x1: frame.x1.clone(),
        x2: frame.x2.clone(),
        q1: frame.q1.clone(),
        q2: frame.q2.clone(),
    };
    let mut linear_params = params;
    linear_params.gamma = 0.0;
    DigitalBackpropagation::new(&linear_params, linear_only.q1.len(), 3200.0)
        .equalize(&mut linear_only.q1, &mut linear_only.q2);
    let (evm_linear, _) = demodulate_aligned(&linear_only, power);

    let mut averaged = Frame {
        x1: frame.x1.clone(),
        x2: frame.x2.clone(),
        q1: frame.q1.clone(),
        q2: frame.q2.clone(),
    };
    PathAveragedBackpropagation::new(&params, averaged.q1.len(), 2000.0)
        .equalize(&mut averaged.q1, &mut averaged.q2);
    let (evm_pa, _) = demodulate_aligned(&averaged, power);

    assert!(
        evm_linear > 0.02,
        "nonlinearity should be visible without compensation, got {evm_linear:.3e}"
    );
    assert!(
        evm_pa < 0.5 * evm_linear,
        "path-averaged pass should recover most of the penalty: {evm_pa:.3e} vs {evm_linear:.3e}"
    );
}
