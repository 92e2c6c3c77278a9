//! Operations on continuous-spectrum scattering data.

use signal_core::{harmonic_conjugate, C64};

use crate::{NftError, ScatterData};

/// Reconstruct `a(λ)` from `(b1, b2)` under the unimodularity constraint
/// `|a|² + |b1|² + |b2|² = 1` with no zeros in the upper half-plane.
///
/// The magnitude follows directly from the constraint; the phase is the
/// harmonic conjugate of `log|a|` (minimum-phase reconstruction), computed
/// with the periodic Hilbert transform on the sampling grid. Requires
/// `|b1|² + |b2|² < 1` everywhere.
pub fn a_from_b(b1: &[C64], b2: &[C64]) -> Result<Vec<C64>, NftError> {
    assert_eq!(b1.len(), b2.len());
    let mut log_mag = Vec::with_capacity(b1.len());
    for (bin, (x, y)) in b1.iter().zip(b2).enumerate() {
        let nb2 = x.norm_sqr() + y.norm_sqr();
        if nb2 >= 1.0 || nb2.is_nan() {
            return Err(NftError::SpectrumMagnitude { bin, found: nb2 });
        }
        log_mag.push(0.5 * (-nb2).ln_1p());
    }
    let phase = harmonic_conjugate(&log_mag);
    Ok(log_mag
        .iter()
        .zip(&phase)
        .map(|(&lm, &ph)| C64::from_polar(lm.exp(), ph))
        .collect())
}

/// Advance scattering coefficients by a normalised distance `ell`:
/// multiplies `b(λ)` by `e^{−4jλ²·ell}` (`a` is invariant).
///
/// The physical link of one normalisation length advances the spectrum by
/// `ell = −1`; receiver-side equalisation therefore applies the remaining
/// positive fraction. Splitting the positive unit between transmitter
/// pre-compensation and receiver post-compensation halves the temporal
/// broadening either side of the link.
pub fn advance(b: &mut [C64], lambdas: &[f64], ell: f64) {
    assert_eq!(b.len(), lambdas.len());
    for (v, &lam) in b.iter_mut().zip(lambdas) {
        *v *= C64::from_polar(1.0, -4.0 * lam * lam * ell);
    }
}

/// Reflection coefficients `q_c,p = b_p / a`.
///
/// Bins where `|a|` collapses below `a_floor` are clamped to that floor
/// (preserving phase) and counted; the count is a receiver diagnostic.
pub fn qc_from_ab(data: &ScatterData, a_floor: f64) -> (Vec<C64>, Vec<C64>, usize) {
    let mut clamped = 0usize;
    let mut qc1 = Vec::with_capacity(data.a.len());
    let mut qc2 = Vec::with_capacity(data.a.len());
    for ((&a, &x), &y) in data.a.iter().zip(&data.b1).zip(&data.b2) {
        let mag = a.norm();
        let denom = if mag < a_floor {
            clamped += 1;
            if mag > 0.0 {
                a * (a_floor / mag)
            } else {
                C64::new(a_floor, 0.0)
            }
        } else {
            a
        };
        qc1.push(x / denom);
        qc2.push(y / denom);
    }
    (qc1, qc2, clamped)
}

/// Scattering data `(a, b1, b2)` from reflection coefficients.
///
/// Uses `|a| = 1/sqrt(1 + |q_c|²)` pointwise together with the
/// minimum-phase reconstruction of the phase of `a`, then `b_p = q_c,p · a`.
pub fn b_pair_from_qc(qc1: &[C64], qc2: &[C64]) -> Result<ScatterData, NftError> {
    assert_eq!(qc1.len(), qc2.len());
    let mut log_mag = Vec::with_capacity(qc1.len());
    for (x, y) in qc1.iter().zip(qc2) {
        let nq2 = x.norm_sqr() + y.norm_sqr();
        if !nq2.is_finite() {
            return Err(NftError::NonFinite {
                context: "reflection coefficients",
            });
        }
        log_mag.push(-0.5 * nq2.ln_1p());
    }
    let phase = harmonic_conjugate(&log_mag);
    let a: Vec<C64> = log_mag
        .iter()
        .zip(&phase)
        .map(|(&lm, &ph)| C64::from_polar(lm.exp(), ph))
        .collect();
    let b1 = qc1.iter().zip(&a).map(|(&q, &av)| q * av).collect();
    let b2 = qc2.iter().zip(&a).map(|(&q, &av)| q * av).collect();
    Ok(ScatterData { a, b1, b2 })
}

/// Signal energy from the b-coefficients (nonlinear Parseval):
/// `E = −(1/π) Σ log(1 − |b1|² − |b2|²) · dλ`.
pub fn energy_from_b(b1: &[C64], b2: &[C64], dlam: f64) -> f64 {
    let sum: f64 = b1
        .iter()
        .zip(b2)
        .map(|(x, y)| -(-(x.norm_sqr() + y.norm_sqr())).ln_1p())
        .sum();
    sum * dlam / std::f64::consts::PI
}

/// Signal energy from the reflection coefficients (nonlinear Parseval):
/// `E = (1/π) Σ log(1 + |q_c1|² + |q_c2|²) · dλ`.
pub fn energy_from_qc(qc1: &[C64], qc2: &[C64], dlam: f64) -> f64 {
    let sum: f64 = qc1
        .iter()
        .zip(qc2)
        .map(|(x, y)| (x.norm_sqr() + y.norm_sqr()).ln_1p())
        .sum();
    sum * dlam / std::f64::consts::PI
}

/// Largest deviation of `|a|² + |b1|² + |b2|²` from 1 across the grid.
pub fn unimodularity_residual(data: &ScatterData) -> f64 {
    data.a
        .iter()
        .zip(&data.b1)
        .zip(&data.b2)
        .map(|((a, x), y)| (a.norm_sqr() + x.norm_sqr() + y.norm_sqr() - 1.0).abs())
        .fold(0.0, f64::max)
}
