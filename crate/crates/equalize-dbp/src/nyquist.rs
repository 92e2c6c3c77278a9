//! Root-raised-cosine reference transceiver.
//!
//! A conventional linearly multiplexed transceiver used as the baseline the
//! backpropagation experiments are judged against: symbols are pulse-shaped
//! with a root-raised-cosine filter applied circularly in the frequency
//! domain, and the receiver applies the matched filter and decimates at the
//! symbol instants.  Because the filtering is circular and the raised-cosine
//! spectrum satisfies the zero-intersymbol-interference criterion on the
//! discrete grid, a back-to-back pass reproduces the symbols to rounding
//! error.

use signal_core::{fft_freqs, fft_in_place, ifft_in_place, C64};

/// Circular root-raised-cosine modulator/demodulator for one polarisation.
pub struct NyquistTransceiver {
    n_symbols: usize,
    oversample: usize,
    /// Root-raised-cosine amplitude response on the FFT grid.
    filter: Vec<f64>,
    /// End-to-end symbol gain of filter + matched filter at unit amplitude.
    rc_gain: f64,
    /// Waveform amplitude per sqrt(launch power) for unit-power symbols.
    shape_gain: f64,
}

impl NyquistTransceiver {
    /// Build a transceiver for `n_symbols` symbols at `symbol_rate` baud,
    /// sampled at `oversample` samples per symbol with root-raised-cosine
    /// roll-off `rolloff`.
    ///
    /// # Panics
    /// Panics if `rolloff` is outside (0, 1] or `oversample < 2`.
    pub fn new(n_symbols: usize, oversample: usize, symbol_rate: f64, rolloff: f64) -> Self {
        assert!(rolloff > 0.0 && rolloff <= 1.0, "roll-off must be in (0, 1]");
        assert!(oversample >= 2, "need at least two samples per symbol");
        let n = n_symbols * oversample;
        let sample_rate = symbol_rate * oversample as f64;
        let dt = 1.0 / sample_rate;

        let inner_edge = 0.5 * symbol_rate * (1.0 - rolloff);
        let outer_edge = 0.5 * symbol_rate * (1.0 + rolloff);
        let filter: Vec<f64> = fft_freqs(n, dt)
            .into_iter()
            .map(|f| {
                let f = f.abs();
                if f <= inner_edge {
                    1.0
                } else if f <= outer_edge {
                    let angle = std::f64::consts::PI * (f - inner_edge) / (symbol_rate * rolloff);
                    (0.5 * (1.0 + angle.cos())).sqrt()
                } else {
                    0.0
                }
            })
            .collect();

        let filter_energy: f64 = filter.iter().map(|h| h * h).sum();
        let n_sq = (n * n) as f64;
        // Matched-filter symbol gain: the raised-cosine pulse peaks at
        // sum(H^2)/n at the sampling instant.
        let rc_gain = filter_energy / n as f64;
        // Mean transmit power of unit-power symbols shaped by H is
        // n_symbols * sum(H^2) / n^2, so scale amplitudes to reach 1 W.
        let shape_gain = (n_sq / (n_symbols as f64 * filter_energy)).sqrt();

        Self {
            n_symbols,
            oversample,
            filter,
            rc_gain,
            shape_gain,
        }
    }

    /// Number of waveform samples per frame.
    pub fn n_samples(&self) -> usize {
        self.n_symbols * self.oversample
    }

    /// Number of symbols per frame.
    pub fn n_symbols(&self) -> usize {
        self.n_symbols
    }

    /// Pulse-shape one polarisation's symbols into a waveform whose mean
    /// power is `power` watts for a unit-mean-power constellation.
    ///
    /// # Panics
    /// Panics if `symbols.len() != n_symbols`.
    pub fn shape(&self, symbols: &[C64], power: f64) -> Vec<C64> {
        assert_eq!(symbols.len(), self.n_symbols, "symbol count mismatch");
        let n = self.n_samples();
        let gain = power.sqrt() * self.shape_gain / n as f64;
        let mut wave = vec![C64::new(0.0, 0.0); n];
        for (m, &x) in symbols.iter().enumerate() {
            wave[m * self.oversample] = x;
        }
        fft_in_place(&mut wave);
        for (w, &h) in wave.iter_mut().zip(&self.filter) {
            *w *= h * gain;
        }
        ifft_in_place(&mut wave);
        wave
    }

    /// Matched-filter a received waveform and decimate to symbol estimates,
    /// undoing the launch-power scaling applied by [`shape`](Self::shape).
    ///
    /// # Panics
    /// Panics if `wave.len() != n_samples()`.
    pub fn demodulate(&self, wave: &[C64], power: f64) -> Vec<C64> {
        assert_eq!(wave.len(), self.n_samples(), "sample count mismatch");
        let n = self.n_samples();
        let gain = 1.0 / (power.sqrt() * self.shape_gain * self.rc_gain * n as f64);
        let mut work = wave.to_vec();
        fft_in_place(&mut work);
        for (w, &h) in work.iter_mut().zip(&self.filter) {
            *w *= h * gain;
        }
        ifft_in_place(&mut work);
        (0..self.n_symbols)
            .map(|m| work[m * self.oversample])
            .collect()
    }
}
