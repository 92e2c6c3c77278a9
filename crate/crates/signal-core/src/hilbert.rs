//! Discrete Hilbert transform on a periodic grid.

use crate::fourier::{fft_in_place, ifft_in_place, C64};

/// Harmonic conjugate of a real periodic sequence.
///
/// Multiplies the spectrum by `−j·sgn(f)` (DC and Nyquist bins zeroed), so
/// `harmonic_conjugate(cos) = sin`. When `x` is the log-magnitude of a
/// spectral function that is analytic in the upper half-plane, the returned
/// sequence is its phase; the mean (DC) component of the phase is
/// unobservable from the magnitude and comes out as zero.
pub fn harmonic_conjugate(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    assert!(n % 2 == 0, "harmonic_conjugate requires an even length, got {n}");
    let mut buf: Vec<C64> = x.iter().map(|&v| C64::new(v, 0.0)).collect();
    fft_in_place(&mut buf);
    // Positive frequencies (1..n/2): multiply by −j. Negative (n/2+1..): +j.
    // DC (0) and Nyquist (n/2) carry no sign information and are zeroed.
    buf[0] = C64::new(0.0, 0.0);
    buf[n / 2] = C64::new(0.0, 0.0);
    for v in &mut buf[1..n / 2] {
        *v = C64::new(v.im, -v.re); // × −j
    }
    for v in &mut buf[n / 2 + 1..] {
        *v = C64::new(-v.im, v.re); // × +j
    }
    ifft_in_place(&mut buf);
    let scale = 1.0 / n as f64;
    buf.into_iter().map(|v| v.re * scale).collect()
}
