//! Carrier synthesis: QAM symbols ↔ oversampled, guard-padded waveform.
//!
//! The data symbols are treated as spectral bins of one multicarrier block.
//! Synthesis inverse-transforms the (oversampling-padded) bins to the time
//! domain, then forward-transforms with guard padding so the result is the
//! carrier spectrum sampled on the full transmission grid — ready to be
//! compressed onto scattering coefficients bin by bin. The guard fraction is
//! controlled by the duration-overhead factor `eta = (T0 + TG)/T0`.

use signal_core::{crop_centered, dft_centered, idft_centered, zero_pad_centered, C64};

use crate::ModemError;

/// Geometry of one carrier block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierShape {
    /// Data carriers per polarisation.
    pub n_carriers: usize,
    /// Oversampling factor (simulation bandwidth / signal bandwidth).
    pub oversample: usize,
    /// Duration overhead (signal + guard) / signal.
    pub eta: f64,
}

impl CarrierShape {
    pub fn validate(&self) -> Result<(), ModemError> {
        if self.n_carriers == 0 {
            return Err(ModemError::NoCarriers);
        }
        if self.eta <= 1.0 || self.eta.is_nan() {
            return Err(ModemError::EtaOutOfRange(self.eta));
        }
        Ok(())
    }

    /// Samples spanning the data block alone (T0 worth).
    pub fn data_len(&self) -> usize {
        self.n_carriers * self.oversample
    }

    /// Length of the synthesis grid. For `eta ≥ 2` this is the transmitted
    /// length; below 2 the waveform is synthesised on a double-length grid
    /// and truncated to [`transmit_len`](Self::transmit_len) afterwards,
    /// because the spectral guard bins alone cannot express a window
    /// shorter than 2·T0.
    pub fn synthesis_len(&self) -> usize {
        let base = self.data_len();
        let m = if self.eta >= 2.0 {
            let mut m = (base as f64 * (self.eta - 1.0)).round() as usize;
            if (base + m) % 2 == 1 {
                m += 1;
            }
            m
        } else {
            base
        };
        base + m
    }

    /// Samples actually transmitted: `eta · T0` worth.
    pub fn transmit_len(&self) -> usize {
        if self.eta >= 2.0 {
            self.synthesis_len()
        } else {
            (self.eta * self.data_len() as f64).round() as usize
        }
    }
}

/// Synthesise the oversampled carrier waveform of one polarisation from its
/// data symbols. Output length is [`CarrierShape::synthesis_len`].
pub fn build_carrier_wave(symbols: &[C64], shape: &CarrierShape) -> Vec<C64> {
    assert_eq!(symbols.len(), shape.n_carriers);
    let d = idft_centered(&zero_pad_centered(symbols, shape.data_len()));
    dft_centered(&zero_pad_centered(&d, shape.synthesis_len()))
}

/// Invert [`build_carrier_wave`]: crop the guard, transform back, and read
/// the central data bins.
pub fn recover_symbols(u: &[C64], shape: &CarrierShape) -> Vec<C64> {
    assert_eq!(u.len(), shape.synthesis_len());
    let d_ext = idft_centered(u);
    let d = crop_centered(&d_ext, shape.data_len());
    let bins = dft_centered(&d);
    crop_centered(&bins, shape.n_carriers)
}
