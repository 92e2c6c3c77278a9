//! Hard-decision error rates and the Gaussian-threshold Q-factor.

use crate::evm::Q_CAP_DB;
use num_complex::Complex64 as C64;
use statrs::function::erf::erfc_inv;

fn nearest(point: C64, constellation: &[C64]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, p) in constellation.iter().enumerate() {
        let d = (point - p).norm_sqr();
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Fraction of received symbols whose nearest constellation point differs
/// from the transmitted one.  `x` must hold exact constellation points.
///
/// # Panics
/// Panics if the slices differ in length or are empty.
pub fn symbol_error_rate(y: &[C64], x: &[C64], constellation: &[C64]) -> f64 {
    assert_eq!(y.len(), x.len(), "symbol count mismatch");
    assert!(!y.is_empty(), "no symbols");
    let errors = y
        .iter()
        .zip(x)
        .filter(|(yi, xi)| nearest(**yi, constellation) != nearest(**xi, constellation))
        .count();
    errors as f64 / y.len() as f64
}

/// Bit error rate estimated from a symbol error rate under the
/// one-bit-per-symbol-error approximation that holds for dense
/// constellations dominated by nearest-neighbour errors:
/// `BER = SER / bits_per_symbol`.
pub fn bit_error_rate(ser: f64, bits_per_symbol: u32) -> f64 {
    ser / bits_per_symbol as f64
}

/// Gaussian-threshold Q-factor in dB for a bit error rate,
/// `20 log10(sqrt(2) * erfc_inv(2 BER))`, capped at
/// [`Q_CAP_DB`](crate::evm::Q_CAP_DB) so error-free runs stay finite.
pub fn q_factor_from_ber_db(ber: f64) -> f64 {
    if ber <= 0.0 {
        return Q_CAP_DB;
    }
    if ber >= 0.5 {
        // erfc_inv(1) = 0: no usable decision margin.
        return f64::NEG_INFINITY;
    }
    (20.0 * (std::f64::consts::SQRT_2 * erfc_inv(2.0 * ber)).log10()).min(Q_CAP_DB)
}
