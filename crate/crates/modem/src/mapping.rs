//! Compression maps between carrier waveforms and scattering coefficients.
//!
//! The b-coefficients are bounded (`|b1|² + |b2|² < 1`), so carriers cannot
//! be written onto them linearly. The joint compression used here rescales
//! the pair (su1, su2) radially so that the *nonlinear* spectral energy
//! density equals the linear one — which makes the nonlinear Parseval
//! identity collapse to the linear Parseval of the carrier waveform and
//! keeps power calibration in closed form:
//!
//! ```text
//! x = ‖s·u‖²,   b_p = sqrt((1 − e^{−x})/x) · s·u_p      (compress_b)
//! ```
//!
//! The reflection-coefficient map acts per component with the analogous
//! scalar density matching, `|q_c| = sqrt(e^{|su|²} − 1)` (compress_qc);
//! both maps preserve phase and invert in closed form.
//!
//! Carrier index ↔ λ-bin orientation: scattering coefficients at positive
//! time-frequency land at negative λ, so the spectrum is index-reversed
//! (modulo the grid) relative to the carrier bins — [`lambda_from_carrier`]
//! / [`carrier_from_lambda`] apply that reorientation.

use signal_core::C64;

/// Saturation bookkeeping from the inverse maps.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClampStats {
    /// Number of bins clamped back into the valid domain.
    pub count: usize,
    /// Largest overshoot beyond the domain boundary that was clamped.
    pub max_overshoot: f64,
}

impl ClampStats {
    pub fn merge(self, other: ClampStats) -> ClampStats {
        ClampStats {
            count: self.count + other.count,
            max_overshoot: self.max_overshoot.max(other.max_overshoot),
        }
    }
}

/// `sqrt((1 − e^{−x})/x)`, numerically stable for small `x`.
fn radial_gain(x: f64) -> f64 {
    if x > 1e-8 {
        ((-(-x).exp_m1()) / x).sqrt()
    } else {
        // sqrt(1 − x/2 + x²/6) ≈ 1 − x/4 + 7x²/96
        1.0 - x / 4.0 + 7.0 * x * x / 96.0
    }
}

/// Joint compression of scaled carriers onto b-coefficients.
pub fn compress_b(u1: &[C64], u2: &[C64], s: f64) -> (Vec<C64>, Vec<C64>) {
    assert_eq!(u1.len(), u2.len());
    let mut b1 = Vec::with_capacity(u1.len());
    let mut b2 = Vec::with_capacity(u1.len());
    for (&x, &y) in u1.iter().zip(u2) {
        let su1 = s * x;
        let su2 = s * y;
        let g = radial_gain(su1.norm_sqr() + su2.norm_sqr());
        b1.push(g * su1);
        b2.push(g * su2);
    }
    (b1, b2)
}

/// Invert [`compress_b`]; returns scaled carriers `s·u_p` plus saturation
/// stats (received magnitudes at or above the unit bound are clamped just
/// inside it — noise can push the received spectrum out of the map's range).
pub fn expand_b(b1: &[C64], b2: &[C64]) -> (Vec<C64>, Vec<C64>, ClampStats) {
    assert_eq!(b1.len(), b2.len());
    let mut u1 = Vec::with_capacity(b1.len());
    let mut u2 = Vec::with_capacity(b1.len());
    let mut stats = ClampStats::default();
    const LIMIT: f64 = 1.0 - 1e-9;
    for (&x, &y) in b1.iter().zip(b2) {
        let mut nb2 = x.norm_sqr() + y.norm_sqr();
        if nb2 >= LIMIT {
            stats.count += 1;
            stats.max_overshoot = stats.max_overshoot.max(nb2 - LIMIT);
            nb2 = LIMIT;
        }
        // Invert x ↦ (1 − e^{−x}): x = −log(1 − ‖b‖²); then scale radially.
        let scale = if nb2 > 1e-8 {
            ((-(1.0 - nb2).ln()) / nb2).sqrt()
        } else {
            1.0 + nb2 / 4.0
        };
        u1.push(x * scale);
        u2.push(y * scale);
    }
    (u1, u2, stats)
}

/// Per-component compression of scaled carriers onto reflection
/// coefficients.
pub fn compress_qc(u1: &[C64], u2: &[C64], s: f64) -> (Vec<C64>, Vec<C64>) {
    let g = |u: C64| -> C64 {
        let su = s * u;
        let m2 = su.norm_sqr();
        if m2 == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let mag = m2.exp_m1().sqrt();
        su * (mag / m2.sqrt())
    };
    (
        u1.iter().map(|&v| g(v)).collect(),
        u2.iter().map(|&v| g(v)).collect(),
    )
}

/// Invert [`compress_qc`]; the map is onto, so no clamping is needed, but
/// non-finite inputs are zeroed and counted.
pub fn expand_qc(qc1: &[C64], qc2: &[C64]) -> (Vec<C64>, Vec<C64>, ClampStats) {
    let mut stats = ClampStats::default();
    let mut g = |q: C64| -> C64 {
        let m2 = q.norm_sqr();
        if !m2.is_finite() {
            stats.count += 1;
            return C64::new(0.0, 0.0);
        }
        if m2 == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let mag = m2.ln_1p().sqrt();
        q * (mag / m2.sqrt())
    };
    let u1 = qc1.iter().map(|&v| g(v)).collect();
    let u2 = qc2.iter().map(|&v| g(v)).collect();
    (u1, u2, stats)
}

/// Reorder a carrier-indexed vector onto the λ grid: bin `k` lands at
/// `(n − k) mod n`.
pub fn lambda_from_carrier(v: &[C64]) -> Vec<C64> {
    let n = v.len();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (k, &val) in v.iter().enumerate() {
        out[(n - k) % n] = val;
    }
    out
}

/// Inverse of [`lambda_from_carrier`].
pub fn carrier_from_lambda(w: &[C64]) -> Vec<C64> {
    let n = w.len();
    (0..n).map(|k| w[(n - k) % n]).collect()
}
