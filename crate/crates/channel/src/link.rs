//! Amplified multi-span link: fibre spans chained with lumped gain and
//! ASE noise loading.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use signal_core::C64;

use crate::constants::SystemParams;
use crate::ssfm::FibreSpan;

/// Add circular complex white Gaussian noise of total variance `sigma2`
/// per sample (`sigma2 / 2` per quadrature), in place.
pub fn add_white_noise<R: Rng + ?Sized>(q: &mut [C64], sigma2: f64, rng: &mut R) {
    if sigma2 == 0.0 {
        return;
    }
    let dist = Normal::new(0.0, (sigma2 / 2.0).sqrt()).expect("finite noise deviation");
    for v in q {
        *v += C64::new(dist.sample(rng), dist.sample(rng));
    }
}

/// A chain of identical amplified spans. Each span is propagated with the
/// split-step integrator, then the amplifier restores the span loss
/// exactly and (optionally) loads white noise on both polarisations.
pub struct Link {
    span: FibreSpan,
    n_spans: usize,
    amp_gain: f64,
    ase_sigma2: f64,
}

impl Link {
    /// Build the link for `params` on `n` samples with split-step size
    /// `dz` (metres). `ase` switches amplifier noise loading on or off.
    pub fn new(params: &SystemParams, n: usize, dz: f64, ase: bool) -> Self {
        let span = FibreSpan::new(
            n,
            params.dt(),
            params.span_length,
            dz,
            params.beta2,
            params.gamma,
            params.alpha,
        );
        Link {
            span,
            n_spans: params.n_spans,
            amp_gain: params.span_gain().sqrt(),
            ase_sigma2: if ase { params.ase_variance() } else { 0.0 },
        }
    }

    pub fn span(&self) -> &FibreSpan {
        &self.span
    }

    pub fn n_spans(&self) -> usize {
        self.n_spans
    }

    /// Amplitude gain applied after each span.
    pub fn amp_gain(&self) -> f64 {
        self.amp_gain
    }

    /// Per-sample complex noise variance each amplifier adds per
    /// polarisation (zero when noise loading is off).
    pub fn ase_sigma2(&self) -> f64 {
        self.ase_sigma2
    }

    /// Propagate a physical-unit burst through every span, in place.
    ///
    /// Noise is drawn polarisation 1 first, then polarisation 2, one
    /// amplifier at a time, so a given RNG stream maps to one fixed noise
    /// realisation.
    pub fn propagate<R: Rng + ?Sized>(&self, q1: &mut [C64], q2: &mut [C64], rng: &mut R) {
        for _ in 0..self.n_spans {
            self.span.propagate(q1, q2);
            for v in q1.iter_mut() {
                *v *= self.amp_gain;
            }
            for v in q2.iter_mut() {
                *v *= self.amp_gain;
            }
            add_white_noise(q1, self.ase_sigma2, rng);
            add_white_noise(q2, self.ase_sigma2, rng);
        }
    }
}
