//! Error-vector magnitude.

use num_complex::Complex64 as C64;

/// Reporting ceiling for decibel quality figures, so that numerically
/// perfect recoveries print as a finite, comparable number.  Double
/// precision puts the EVM floor of any nontrivial processing chain around
/// 1e-9 (Q ≈ 180 dB), so the cap binds only for bitwise-exact recoveries
/// and zero error counts; ordinary results keep their full resolution.
pub const Q_CAP_DB: f64 = 180.0;

/// Root-mean-square error vector magnitude of received symbols `y` against
/// the reference `x`, normalised by the reference power.
///
/// # Panics
/// Panics if the slices differ in length or the reference is all zero.
pub fn error_vector_magnitude(y: &[C64], x: &[C64]) -> f64 {
    assert_eq!(y.len(), x.len(), "symbol count mismatch");
    let err: f64 = y.iter().zip(x).map(|(a, b)| (a - b).norm_sqr()).sum();
    let reference: f64 = x.iter().map(|b| b.norm_sqr()).sum();
    assert!(reference > 0.0, "reference frame is dark");
    (err / reference).sqrt()
}

/// Q-factor in dB derived from an error-vector magnitude,
/// `-20 log10(EVM)`, capped at [`Q_CAP_DB`].
pub fn evm_q_db(evm: f64) -> f64 {
    if evm <= 0.0 {
        return Q_CAP_DB;
    }
    (-20.0 * evm.log10()).min(Q_CAP_DB)
}
