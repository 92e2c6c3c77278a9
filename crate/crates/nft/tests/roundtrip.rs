//! Synthesis ↔ scattering consistency, fast-path equivalence, spectral
//! identities, and transformation laws.

use approx::assert_abs_diff_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signal_core::C64;

use nft::{
    a_from_b, advance, b_pair_from_qc, energy_from_b, energy_from_qc, qc_from_ab, scatter_fast,
    scatter_march, synthesise, unimodularity_residual, ScatterData, ScatteringGrid,
};

/// Smooth random band-limited b-spectrum pair with ‖b‖_∞ = `bmax`.
fn random_b_spectrum(
    n: usize,
    bmax: f64,
    frac: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<C64>, Vec<C64>) {
    let smooth = |rng: &mut ChaCha8Rng| -> Vec<C64> {
        let mut prof = vec![C64::new(0.0, 0.0); n];
        for _ in 0..6 {
            let f = rng.gen_range(0.5..4.0);
            let phs = rng.gen_range(0.0..std::f64::consts::TAU);
            let amp = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            for (k, v) in prof.iter_mut().enumerate() {
                let t = 2.0 * k as f64 / n as f64 - 1.0;
                let envelope = (-(t / frac).powi(2) * 4.0).exp();
                *v += amp * C64::from_polar(envelope, std::f64::consts::TAU * f * t + phs);
            }
        }
        prof
    };
    let b1 = smooth(rng);
    let b2 = smooth(rng);
    let peak = b1
        .iter()
        .zip(&b2)
        .map(|(x, y)| (x.norm_sqr() + y.norm_sqr()).sqrt())
        .fold(0.0, f64::max);
    let scale = bmax / peak;
    (
        b1.into_iter().map(|v| v * scale).collect(),
        b2.into_iter().map(|v| v * scale).collect(),
    )
}

fn rel_l2(got1: &[C64], got2: &[C64], want1: &[C64], want2: &[C64]) -> f64 {
    let num: f64 = got1
        .iter()
        .zip(want1)
        .chain(got2.iter().zip(want2))
        .map(|(g, w)| (g - w).norm_sqr())
        .sum();
    let den: f64 = want1
        .iter()
        .chain(want2.iter())
        .map(|w| w.norm_sqr())
        .sum();
    (num / den).sqrt()
}

#[test]
fn synthesis_then_scattering_reproduces_spectrum() {
    // The layer peeler inverts the split scheme algebraically, so the round
    // trip must close to rounding error even at strong amplitudes.
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let n = 1024;
    let grid = ScatteringGrid::centred(n, 0.02);
    let (b1, b2) = random_b_spectrum(n, 0.9, 0.15, &mut rng);
    let a = a_from_b(&b1, &b2).unwrap();
    let (q1, q2) = synthesise(&a, &b1, &b2, &grid).unwrap();
    let peak = q1
        .iter()
        .zip(&q2)
        .map(|(x, y)| (x.norm_sqr() + y.norm_sqr()).sqrt())
        .fold(0.0, f64::max);
    assert!(peak > 0.5, "test signal unexpectedly weak (peak {peak})");

    let back = scatter_fast(&q1, &q2, &grid);
    let err = rel_l2(&back.b1, &back.b2, &b1, &b2);
    assert!(err < 1e-9, "roundtrip rel L2 {err}");
    let aerr = back
        .a
        .iter()
        .zip(&a)
        .map(|(g, w)| (g - w).norm())
        .fold(0.0, f64::max);
    assert!(aerr < 1e-9, "a mismatch {aerr}");
}

#[test]
fn fast_path_equals_march_on_conjugate_grid() {
    let n = 512;
    let grid = ScatteringGrid::centred(n, 0.02);
    let mut q1 = Vec::with_capacity(n);
    let mut q2 = Vec::with_capacity(n);
    for k in 0..n {
        let t = (k as f64 - n as f64 / 2.0) * grid.h;
        q1.push(C64::from_polar(
            0.8 * (-(t / 2.0) * (t / 2.0)).exp(),
            1.3 * t,
        ));
        q2.push(C64::from_polar(
            0.5 * (-(t / 1.5) * (t / 1.5)).exp(),
            -0.7 * t + 0.4,
        ));
    }
    let lambdas = grid.lambdas();
    let slow = scatter_march(&q1, &q2, &grid, &lambdas);
    let fast = scatter_fast(&q1, &q2, &grid);
    for i in 0..n {
        assert_abs_diff_eq!(slow.a[i].re, fast.a[i].re, epsilon = 1e-11);
        assert_abs_diff_eq!(slow.a[i].im, fast.a[i].im, epsilon = 1e-11);
        assert_abs_diff_eq!(slow.b1[i].re, fast.b1[i].re, epsilon = 1e-11);
        assert_abs_diff_eq!(slow.b1[i].im, fast.b1[i].im, epsilon = 1e-11);
        assert_abs_diff_eq!(slow.b2[i].re, fast.b2[i].re, epsilon = 1e-11);
        assert_abs_diff_eq!(slow.b2[i].im, fast.b2[i].im, epsilon = 1e-11);
    }
}

#[test]
fn zero_signal_scatters_trivially() {
    let n = 64;
    let grid = ScatteringGrid::centred(n, 0.05);
    let q = vec![C64::new(0.0, 0.0); n];
    let data = scatter_fast(&q, &q, &grid);
    for i in 0..n {
        assert_abs_diff_eq!(data.a[i].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(data.a[i].im, 0.0, epsilon = 1e-12);
        assert!(data.b1[i].norm() < 1e-12);
        assert!(data.b2[i].norm() < 1e-12);
    }
}

#[test]
fn scattering_preserves_unimodularity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 512;
    let grid = ScatteringGrid::centred(n, 0.03);
    let mut q1 = Vec::with_capacity(n);
    let mut q2 = Vec::with_capacity(n);
    for k in 0..n {
        let t = (k as f64 - n as f64 / 2.0) * grid.h;
        let env = (-(t * t) / 4.0).exp();
        q1.push(C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * env);
        q2.push(C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * env);
    }
    let data = scatter_fast(&q1, &q2, &grid);
    // The split scheme conserves the discrete invariant exactly.
    assert!(unimodularity_residual(&data) < 1e-10);
}

#[test]
fn weak_field_limit_matches_linear_spectrum() {
    // For ‖q‖ → 0, b(λ) → −∫ q*(τ) e^{−2jλτ} dτ: a weak pulse with carrier
    // e^{+jωτ} must concentrate |b| around λ = −ω/2.
    let n = 1024;
    let grid = ScatteringGrid::centred(n, 0.02);
    let omega = 3.0;
    let eps = 1e-3;
    let mut q1 = Vec::with_capacity(n);
    for k in 0..n {
        let t = (k as f64 - n as f64 / 2.0) * grid.h;
        q1.push(C64::from_polar(eps * (-(t * t) / 2.0).exp(), omega * t));
    }
    let q2 = vec![C64::new(0.0, 0.0); n];
    let data = scatter_fast(&q1, &q2, &grid);
    let lambdas = grid.lambdas();
    let peak_idx = (0..n)
        .max_by(|&i, &j| {
            data.b1[i]
                .norm()
                .partial_cmp(&data.b1[j].norm())
                .unwrap()
        })
        .unwrap();
    let expected = -omega / 2.0;
    assert!(
        (lambdas[peak_idx] - expected).abs() < 3.0 * grid.dlam(),
        "peak at λ = {} but expected ≈ {expected}",
        lambdas[peak_idx]
    );
    // Amplitude check against the analytic weak-field transform of the
    // Gaussian envelope: |b|(λ) ≈ ε √(2π) e^{−(2λ+ω)²/2}, so the grid peak
    // sits within a grid-offset factor of ε √(2π).
    let want = eps * (2.0 * std::f64::consts::PI).sqrt();
    assert_abs_diff_eq!(data.b1[peak_idx].norm(), want, epsilon = 0.02 * want);
}

#[test]
fn constant_polarisation_rotation_conjugates_on_spectrum() {
    // q' = V q with V unitary ⇒ b' = V̄ b and a' = a.
    let n = 256;
    let grid = ScatteringGrid::centred(n, 0.04);
    let mut q1 = Vec::with_capacity(n);
    let mut q2 = Vec::with_capacity(n);
    for k in 0..n {
        let t = (k as f64 - n as f64 / 2.0) * grid.h;
        let env = (-(t * t) / 3.0).exp();
        q1.push(C64::from_polar(0.7 * env, 0.9 * t));
        q2.push(C64::from_polar(0.4 * env, -1.1 * t + 0.3));
    }
    // Complex unitary: V = [[cosθ, e^{jφ} sinθ], [−e^{−jφ} sinθ, cosθ]]
    let (theta, phi) = (0.6f64, 1.1f64);
    let (ct, st) = (theta.cos(), theta.sin());
    let v01 = C64::from_polar(st, phi);
    let v10 = -C64::from_polar(st, -phi);
    let r1: Vec<C64> = q1.iter().zip(&q2).map(|(&x, &y)| ct * x + v01 * y).collect();
    let r2: Vec<C64> = q1.iter().zip(&q2).map(|(&x, &y)| v10 * x + ct * y).collect();

    let base = scatter_fast(&q1, &q2, &grid);
    let rot = scatter_fast(&r1, &r2, &grid);
    for i in 0..n {
        let wb1 = ct * base.b1[i] + v01.conj() * base.b2[i];
        let wb2 = v10.conj() * base.b1[i] + ct * base.b2[i];
        assert!((rot.a[i] - base.a[i]).norm() < 1e-10);
        assert!((rot.b1[i] - wb1).norm() < 1e-10);
        assert!((rot.b2[i] - wb2).norm() < 1e-10);
    }
}

#[test]
fn parseval_identities_hold_both_ways() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 2048;
    let grid = ScatteringGrid::centred(n, 0.02);
    let (b1, b2) = random_b_spectrum(n, 0.75, 0.12, &mut rng);
    let a = a_from_b(&b1, &b2).unwrap();
    let (q1, q2) = synthesise(&a, &b1, &b2, &grid).unwrap();

    let e_time: f64 = q1
        .iter()
        .zip(&q2)
        .map(|(x, y)| x.norm_sqr() + y.norm_sqr())
        .sum::<f64>()
        * grid.h;

    let e_b = energy_from_b(&b1, &b2, grid.dlam());
    let data = ScatterData {
        a,
        b1: b1.clone(),
        b2: b2.clone(),
    };
    let (qc1, qc2, clamped) = qc_from_ab(&data, 1e-12);
    assert_eq!(clamped, 0);
    let e_qc = energy_from_qc(&qc1, &qc2, grid.dlam());

    assert!((e_time - e_b).abs() / e_b < 2e-3, "b-form {e_b} vs time {e_time}");
    assert!((e_time - e_qc).abs() / e_qc < 2e-3, "qc-form {e_qc} vs time {e_time}");
}

#[test]
fn reflection_coefficients_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 512;
    let (mut qc1, mut qc2) = random_b_spectrum(n, 0.9, 0.2, &mut rng);
    // Scale up: reflection coefficients are unbounded.
    for v in qc1.iter_mut().chain(qc2.iter_mut()) {
        *v *= 2.5;
    }
    let data = b_pair_from_qc(&qc1, &qc2).unwrap();
    assert!(unimodularity_residual(&data) < 1e-12);
    let (r1, r2, clamped) = qc_from_ab(&data, 1e-12);
    assert_eq!(clamped, 0);
    for i in 0..n {
        assert!((r1[i] - qc1[i]).norm() < 1e-10);
        assert!((r2[i] - qc2[i]).norm() < 1e-10);
    }
}

#[test]
fn advance_composes_and_preserves_magnitude() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 256;
    let grid = ScatteringGrid::centred(n, 0.05);
    let lambdas = grid.lambdas();
    let (b1, _) = random_b_spectrum(n, 0.8, 0.2, &mut rng);

    let mut once = b1.clone();
    advance(&mut once, &lambdas, 0.7);
    advance(&mut once, &lambdas, -0.2);
    let mut direct = b1.clone();
    advance(&mut direct, &lambdas, 0.5);
    for i in 0..n {
        assert!((once[i] - direct[i]).norm() < 1e-12);
        assert_abs_diff_eq!(once[i].norm(), b1[i].norm(), epsilon = 1e-12);
    }

    let mut back = b1.clone();
    advance(&mut back, &lambdas, 0.9);
    advance(&mut back, &lambdas, -0.9);
    for i in 0..n {
        assert!((back[i] - b1[i]).norm() < 1e-12);
    }
}

#[test]
fn a_reconstruction_rejects_saturated_spectra() {
    let n = 64;
    let mut b1 = vec![C64::new(0.0, 0.0); n];
    let b2 = vec![C64::new(0.0, 0.0); n];
    b1[10] = C64::new(1.0, 0.0);
    assert!(a_from_b(&b1, &b2).is_err());
}
