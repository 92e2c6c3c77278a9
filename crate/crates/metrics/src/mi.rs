//! Auxiliary-channel mutual information.

use num_complex::Complex64 as C64;

/// Least-squares complex gain between received symbols and the reference,
/// `sum(y conj(x)) / sum(|x|^2)`.
///
/// # Panics
/// Panics if the slices differ in length or the reference is all zero.
pub fn ls_gain(y: &[C64], x: &[C64]) -> C64 {
    assert_eq!(y.len(), x.len(), "symbol count mismatch");
    let cross: C64 = y.iter().zip(x).map(|(a, b)| a * b.conj()).sum();
    let power: f64 = x.iter().map(|b| b.norm_sqr()).sum();
    assert!(power > 0.0, "reference frame is dark");
    cross / power
}

/// Memoryless-Gaussian auxiliary-channel estimate of the mutual information
/// in bits per symbol between transmitted constellation points `x` (drawn
/// uniformly from `constellation`) and received symbols `y`.
///
/// The channel is modelled as `y = h x + n` with the least-squares gain `h`
/// and circular Gaussian residual `n`; the estimate is the Monte-Carlo
/// average of the information density under that model, which lower-bounds
/// the true mutual information of the actual channel.  The result is
/// clamped to `[0, log2 M]`.
///
/// # Panics
/// Panics if slices differ in length, are empty, or the constellation is.
pub fn auxiliary_mi_bits(y: &[C64], x: &[C64], constellation: &[C64]) -> f64 {
    assert_eq!(y.len(), x.len(), "symbol count mismatch");
    assert!(!y.is_empty(), "no symbols");
    assert!(!constellation.is_empty(), "empty constellation");
    let m = constellation.len() as f64;
    let bits_max = m.log2();

    let h = ls_gain(y, x);
    let sigma2 = y
        .iter()
        .zip(x)
        .map(|(yi, xi)| (yi - h * xi).norm_sqr())
        .sum::<f64>()
        / y.len() as f64;
    if sigma2 <= f64::EPSILON * x.iter().map(|b| b.norm_sqr()).sum::<f64>() / y.len() as f64 {
        // Residual at rounding level: the model is noiseless.
        return bits_max;
    }

    let faded: Vec<C64> = constellation.iter().map(|p| h * p).collect();
    let mut sum_bits = 0.0;
    for (yi, xi) in y.iter().zip(x) {
        let d_sent = (yi - h * xi).norm_sqr();
        // log-sum-exp over the constellation of -(|y - h s|^2 - |y - h x|^2) / sigma2
        let exponents: Vec<f64> = faded
            .iter()
            .map(|p| -((yi - p).norm_sqr() - d_sent) / sigma2)
            .collect();
        let peak = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lse = peak + exponents.iter().map(|e| (e - peak).exp()).sum::<f64>().ln();
        sum_bits += (m.ln() - lse) / std::f64::consts::LN_2;
    }
    (sum_bits / y.len() as f64).clamp(0.0, bits_max)
}
