//! Centred-transform conventions against a direct-summation oracle.

use approx::assert_abs_diff_eq;
use signal_core::{
    angular_freqs, crop_centered, dft_centered, fft_freqs, idft_centered, zero_pad_centered, C64,
};

/// Direct O(n²) evaluation of the centred DFT definition.
fn dft_direct(x: &[C64]) -> Vec<C64> {
    let n = x.len() as f64;
    let half = x.len() / 2;
    (0..x.len())
        .map(|m| {
            let mut acc = C64::new(0.0, 0.0);
            for (k, &v) in x.iter().enumerate() {
                let angle = -2.0 * std::f64::consts::PI * (k as f64 - half as f64)
                    * (m as f64 - half as f64)
                    / n;
                acc += v * C64::from_polar(1.0, angle);
            }
            acc
        })
        .collect()
}

fn test_signal(n: usize) -> Vec<C64> {
    // Deterministic quasi-random data; no RNG dependency needed here.
    (0..n)
        .map(|k| {
            let a = ((k * 2654435761) % 1000) as f64 / 1000.0 - 0.5;
            let b = ((k * 40503 + 7) % 1000) as f64 / 1000.0 - 0.5;
            C64::new(a, b)
        })
        .collect()
}

#[test]
fn centred_dft_matches_direct_sum() {
    for n in [8, 16, 30, 64] {
        let x = test_signal(n);
        let got = dft_centered(&x);
        let want = dft_direct(&x);
        for (g, w) in got.iter().zip(&want) {
            assert_abs_diff_eq!(g.re, w.re, epsilon = 1e-9);
            assert_abs_diff_eq!(g.im, w.im, epsilon = 1e-9);
        }
    }
}

#[test]
fn centred_pair_roundtrips() {
    let x = test_signal(128);
    let back = idft_centered(&dft_centered(&x));
    for (g, w) in back.iter().zip(&x) {
        assert_abs_diff_eq!(g.re, w.re, epsilon = 1e-12);
        assert_abs_diff_eq!(g.im, w.im, epsilon = 1e-12);
    }
}

#[test]
fn symmetric_real_input_gives_real_spectrum() {
    // Even-symmetric about the centre index ⇒ centred DFT is purely real.
    let n = 64;
    let mut x = vec![C64::new(0.0, 0.0); n];
    for (k, v) in x.iter_mut().enumerate() {
        let d = k as isize - (n / 2) as isize;
        *v = C64::new((-0.03 * (d * d) as f64).exp(), 0.0);
    }
    let spec = dft_centered(&x);
    let max_im = spec.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    assert!(max_im < 1e-10, "imaginary leakage {max_im}");
}

#[test]
fn pad_and_crop_are_inverse() {
    let x = test_signal(20);
    let padded = zero_pad_centered(&x, 33);
    assert_eq!(padded.len(), 33);
    // 13 extra samples: 6 before, 7 after.
    assert_eq!(padded[5], C64::new(0.0, 0.0));
    assert_eq!(padded[6], x[0]);
    assert_eq!(padded[25], x[19]);
    let back = crop_centered(&padded, 20);
    assert_eq!(back, x);
}

#[test]
fn parseval_holds_for_centred_pair() {
    let x = test_signal(256);
    let spec = dft_centered(&x);
    let e_time: f64 = x.iter().map(|v| v.norm_sqr()).sum();
    let e_freq: f64 = spec.iter().map(|v| v.norm_sqr()).sum::<f64>() / 256.0;
    assert_abs_diff_eq!(e_time, e_freq, epsilon = 1e-9 * e_time);
}

#[test]
fn fft_freqs_layout() {
    let f = fft_freqs(8, 0.5);
    let df = 1.0 / (8.0 * 0.5);
    let want = [0.0, df, 2.0 * df, 3.0 * df, -4.0 * df, -3.0 * df, -2.0 * df, -df];
    for (g, w) in f.iter().zip(&want) {
        assert_abs_diff_eq!(g, w, epsilon = 1e-15);
    }
    let w = angular_freqs(8, 0.5);
    assert_abs_diff_eq!(w[1], 2.0 * std::f64::consts::PI * df, epsilon = 1e-15);
}
