//! Scattering of constant (rectangular) dual-polarisation pulses against
//! the closed-form solution.
//!
//! For q_p(τ) = A_p on [−T/2, T/2] (zero outside), with
//! ‖A‖² = |A1|² + |A2|² and κ = sqrt(λ² + ‖A‖²):
//!
//!   a(λ)  = e^{jλT} (cos κT − j (λ/κ) sin κT)
//!   b_p(λ) = −A_p* · sin(κT)/κ
//!
//! derived from the piecewise-constant transfer matrix; it reduces to the
//! scalar rectangle result after a constant polarisation rotation.

use approx::assert_abs_diff_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signal_core::C64;

use nft::{scatter_exact, scatter_march, ScatteringGrid};

fn rect_analytic(a1: C64, a2: C64, t: f64, lambdas: &[f64]) -> (Vec<C64>, Vec<C64>, Vec<C64>) {
    let r2 = a1.norm_sqr() + a2.norm_sqr();
    let mut a = Vec::new();
    let mut b1 = Vec::new();
    let mut b2 = Vec::new();
    for &lam in lambdas {
        let kap = (lam * lam + r2).sqrt();
        let c = (kap * t).cos();
        let x = if kap > 0.0 { (kap * t).sin() / kap } else { t };
        a.push(C64::from_polar(1.0, lam * t) * C64::new(c, -lam * x));
        b1.push(-a1.conj() * x);
        b2.push(-a2.conj() * x);
    }
    (a, b1, b2)
}

fn rect_grid(t: f64, n: usize) -> ScatteringGrid {
    ScatteringGrid::centred(n, t / n as f64)
}

#[test]
fn exact_march_matches_closed_form() {
    let a1 = C64::new(0.41, 0.30);
    let a2 = C64::new(-0.22, 0.51);
    let t = 2.0;
    let n = 1000;
    let grid = rect_grid(t, n);
    let q1 = vec![a1; n];
    let q2 = vec![a2; n];
    let lambdas: Vec<f64> = (0..41).map(|k| -8.0 + 0.4 * k as f64).collect();

    let got = scatter_exact(&q1, &q2, &grid, &lambdas);
    let (wa, wb1, wb2) = rect_analytic(a1, a2, t, &lambdas);
    for i in 0..lambdas.len() {
        assert_abs_diff_eq!(got.a[i].re, wa[i].re, epsilon = 1e-12);
        assert_abs_diff_eq!(got.a[i].im, wa[i].im, epsilon = 1e-12);
        assert_abs_diff_eq!(got.b1[i].re, wb1[i].re, epsilon = 1e-12);
        assert_abs_diff_eq!(got.b1[i].im, wb1[i].im, epsilon = 1e-12);
        assert_abs_diff_eq!(got.b2[i].re, wb2[i].re, epsilon = 1e-12);
        assert_abs_diff_eq!(got.b2[i].im, wb2[i].im, epsilon = 1e-12);
    }
}

#[test]
fn magnitude_identity_of_closed_form() {
    // |a(λ)| = |cos κT − j(λ/κ) sin κT| and unimodularity on the real line.
    let a1 = C64::new(0.3, -0.2);
    let a2 = C64::new(0.1, 0.45);
    let t = 1.7;
    let lambdas: Vec<f64> = (0..25).map(|k| -6.0 + 0.5 * k as f64).collect();
    let (a, b1, b2) = rect_analytic(a1, a2, t, &lambdas);
    let r2 = a1.norm_sqr() + a2.norm_sqr();
    for (i, &lam) in lambdas.iter().enumerate() {
        let kap = (lam * lam + r2).sqrt();
        let want =
            C64::new((kap * t).cos(), -lam / kap * (kap * t).sin()).norm();
        assert_abs_diff_eq!(a[i].norm(), want, epsilon = 1e-13);
        let uni = a[i].norm_sqr() + b1[i].norm_sqr() + b2[i].norm_sqr();
        assert_abs_diff_eq!(uni, 1.0, epsilon = 1e-12);
    }
}

#[test]
fn split_march_matches_closed_form_at_random_pulses() {
    // Ten random (A1, A2, T) triples; the split scheme is O(h²), so a fine
    // grid puts it well inside 1e−4 of the analytic values even at the
    // outer λ of the sweep.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..10 {
        let a1 = C64::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8));
        let a2 = C64::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8));
        let t = rng.gen_range(0.5..2.0);
        let n = 4096;
        let grid = rect_grid(t, n);
        let q1 = vec![a1; n];
        let q2 = vec![a2; n];
        let lambdas: Vec<f64> = (0..81).map(|k| -10.0 + 0.25 * k as f64).collect();
        let got = scatter_march(&q1, &q2, &grid, &lambdas);
        let (wa, wb1, wb2) = rect_analytic(a1, a2, t, &lambdas);
        let mut worst = 0.0f64;
        for i in 0..lambdas.len() {
            worst = worst
                .max((got.a[i] - wa[i]).norm())
                .max((got.b1[i] - wb1[i]).norm())
                .max((got.b2[i] - wb2[i]).norm());
        }
        assert!(worst < 1e-4, "split-scheme error {worst} exceeds 1e-4");
    }
}

#[test]
fn split_march_error_shrinks_quadratically() {
    let a1 = C64::new(0.5, 0.1);
    let a2 = C64::new(-0.3, 0.4);
    let t = 2.0;
    let lambdas = [-5.0, -1.3, 0.7, 4.2];
    let mut errs = Vec::new();
    for n in [500usize, 1000, 2000] {
        let grid = rect_grid(t, n);
        let q1 = vec![a1; n];
        let q2 = vec![a2; n];
        let got = scatter_march(&q1, &q2, &grid, &lambdas);
        let (wa, _, _) = rect_analytic(a1, a2, t, &lambdas);
        let err: f64 = got
            .a
            .iter()
            .zip(&wa)
            .map(|(g, w)| (g - w).norm())
            .fold(0.0, f64::max);
        errs.push(err);
    }
    // Halving h should cut the error by ≈4; allow generous slack.
    assert!(errs[1] < errs[0] / 2.5, "errors {errs:?} not O(h²)");
    assert!(errs[2] < errs[1] / 2.5, "errors {errs:?} not O(h²)");
}
