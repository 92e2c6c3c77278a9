//! Power/energy helpers and the physical↔normalised scaling pair.

use crate::fourier::C64;

/// Convert dBm to watts.
pub fn dbm_to_watts(p_dbm: f64) -> f64 {
    1e-3 * 10f64.powf(p_dbm / 10.0)
}

/// Convert watts to dBm.
pub fn watts_to_dbm(p_w: f64) -> f64 {
    10.0 * (p_w / 1e-3).log10()
}

/// Energy of a sampled waveform: `Σ |x|² · dt`.
pub fn energy(x: &[C64], dt: f64) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>() * dt
}

/// Mean power of a sampled waveform: `mean |x|²`.
pub fn mean_power(x: &[C64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    x.iter().map(|v| v.norm_sqr()).sum::<f64>() / x.len() as f64
}

/// Scaling pair between physical fields and the dimensionless frame used by
/// the scattering code.
///
/// A physical envelope `Q(t)` (amplitude in √W, time in seconds) maps to the
/// dimensionless `q(τ) = Q(τ · t_scale) / amp_scale`, and a physical sample
/// spacing `dt` maps to `h = dt / t_scale`. The link crate derives the
/// canonical instance from the fibre parameters; everything else treats the
/// two numbers as opaque.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalisation {
    /// Seconds per normalised time unit.
    pub t_scale: f64,
    /// √W per normalised amplitude unit.
    pub amp_scale: f64,
}

impl Normalisation {
    /// Normalised sample spacing for a physical spacing `dt` in seconds.
    pub fn step(&self, dt: f64) -> f64 {
        dt / self.t_scale
    }

    /// Scale a physical waveform (√W) down to dimensionless samples.
    pub fn to_normalised(&self, q: &mut [C64]) {
        let s = 1.0 / self.amp_scale;
        for v in q {
            *v *= s;
        }
    }

    /// Scale dimensionless samples up to a physical waveform (√W).
    pub fn to_physical(&self, q: &mut [C64]) {
        for v in q {
            *v *= self.amp_scale;
        }
    }
}
