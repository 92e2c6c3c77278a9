//! Symbol-quality estimators against closed-form and quadrature references.

use metrics::{
    auxiliary_mi_bits, bit_error_rate, error_vector_magnitude, evm_q_db, ls_gain,
    q_factor_from_ber_db, symbol_error_rate,
};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// 32-point cross constellation: odd coordinates up to |5| with the four
/// outer corners removed, scaled to unit mean power.
fn cross32() -> Vec<C64> {
    let mut points = Vec::new();
    for i in (-5i32..=5).step_by(2) {
        for j in (-5i32..=5).step_by(2) {
            if i.abs() == 5 && j.abs() == 5 {
                continue;
            }
            points.push(C64::new(i as f64, j as f64));
        }
    }
    let scale = 20.0_f64.sqrt();
    points.iter().map(|p| p / scale).collect()
}

fn random_payload(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    let points = cross32();
    (0..n).map(|_| points[rng.gen_range(0..points.len())]).collect()
}

#[test]
fn evm_measures_relative_error() {
    let x = vec![C64::new(1.0, 0.0), C64::new(0.0, -1.0)];
    assert_eq!(error_vector_magnitude(&x, &x), 0.0);

    let y = vec![C64::new(1.1, 0.0), C64::new(0.0, -1.0)];
    let expected = (0.01_f64 / 2.0).sqrt();
    assert!((error_vector_magnitude(&y, &x) - expected).abs() < 1e-12);
}

#[test]
fn evm_q_is_capped_for_perfect_recovery() {
    assert!((evm_q_db(1e-2) - 40.0).abs() < 1e-12);
    assert!((evm_q_db(1e-4) - 80.0).abs() < 1e-12);
    assert_eq!(evm_q_db(1e-10), 180.0);
    assert_eq!(evm_q_db(0.0), 180.0);
}

#[test]
fn symbol_errors_are_counted_against_nearest_decisions() {
    let points = cross32();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let x = random_payload(&mut rng, 1000);
    let mut y = x.clone();
    // Push three symbols just across a decision boundary (grid pitch is
    // 2/sqrt(20), so a shift of 1.2 pitches lands in the neighbour cell).
    let shift = C64::new(1.2 * 2.0 / 20.0_f64.sqrt(), 0.0);
    for &i in &[10usize, 500, 900] {
        let sign = if x[i].re > 0.0 { -1.0 } else { 1.0 };
        y[i] += shift * sign;
    }
    let ser = symbol_error_rate(&y, &x, &points);
    assert!((ser - 0.003).abs() < 1e-12);
    assert!((bit_error_rate(ser, 5) - 6e-4).abs() < 1e-15);
}

#[test]
fn q_factor_matches_the_gaussian_threshold_law() {
    // Reference points computed independently from erfc_inv.
    assert!((q_factor_from_ber_db(1e-3) - 9.7998225690).abs() < 1e-6);
    assert!((q_factor_from_ber_db(1e-2) - 7.3334931630).abs() < 1e-6);
    assert_eq!(q_factor_from_ber_db(0.0), 180.0);
    assert_eq!(q_factor_from_ber_db(0.5), f64::NEG_INFINITY);
}

#[test]
fn ls_gain_recovers_a_complex_scale_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let x = random_payload(&mut rng, 512);
    let g = C64::from_polar(0.8, 0.3);
    let y: Vec<C64> = x.iter().map(|xi| g * xi).collect();
    let estimate = ls_gain(&y, &x);
    assert!((estimate - g).norm() < 1e-12);
}

#[test]
fn auxiliary_mi_matches_quadrature_on_a_gaussian_channel() {
    // Reference: 2-D Gauss-Hermite quadrature of the auxiliary-channel
    // information density for the unit-power 32-cross at 15 dB SNR gives
    // 4.5398178 bits (converged to 1e-7 against node-count refinement).
    let snr_db = 15.0;
    let sigma2 = 10f64.powf(-snr_db / 10.0);
    let noise = Normal::new(0.0, (sigma2 / 2.0).sqrt()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let n = 1 << 14;
    let points = cross32();
    let x = random_payload(&mut rng, n);
    let y: Vec<C64> = x
        .iter()
        .map(|xi| xi + C64::new(noise.sample(&mut rng), noise.sample(&mut rng)))
        .collect();

    let mi = auxiliary_mi_bits(&y, &x, &points);
    assert!(
        (mi - 4.5398178).abs() < 0.02,
        "MI estimate {mi:.4} vs quadrature 4.5398"
    );

    // The estimator must absorb a common complex gain into its channel
    // model rather than treating it as noise.
    let g = C64::from_polar(0.8, 0.3);
    let y_rot: Vec<C64> = y.iter().map(|yi| g * yi).collect();
    let mi_rot = auxiliary_mi_bits(&y_rot, &x, &points);
    assert!(
        (mi_rot - mi).abs() < 1e-9,
        "gain invariance broken: {mi_rot:.6} vs {mi:.6}"
    );
}

#[test]
fn auxiliary_mi_saturates_at_the_constellation_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let points = cross32();
    let x = random_payload(&mut rng, 4096);
    let mi = auxiliary_mi_bits(&x, &x, &points);
    assert_eq!(mi, 5.0, "noiseless channel must report log2(32)");
}

#[test]
fn auxiliary_mi_stays_non_negative_in_deep_noise() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let points = cross32();
    let x = random_payload(&mut rng, 4096);
    let noise = Normal::new(0.0, 2.0).unwrap();
    let y: Vec<C64> = x
        .iter()
        .map(|xi| xi + C64::new(noise.sample(&mut rng), noise.sample(&mut rng)))
        .collect();
    let mi = auxiliary_mi_bits(&y, &x, &points);
    assert!((0.0..0.5).contains(&mi), "deep-noise MI {mi:.4}");
}
