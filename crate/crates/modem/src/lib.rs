//! Dual-polarisation multicarrier modem over the nonlinear spectrum.
//!
//! The transmit path maps QAM symbols onto band-limited carrier waveforms,
//! compresses those through a modulation map onto scattering coefficients
//! (either directly onto `b` or onto the reflection coefficient
//! `q_c = b/a`), applies dispersion pre-compensation, and synthesises the
//! time-domain burst with the inverse scattering transform. The receive
//! path runs the forward transform, undoes the remaining spectral rotation,
//! inverts the modulation map, and demaps the carriers.
//!
//! Module layout:
//!
//! * [`constellation`] — the 32-point cross constellation and hard decisions.
//! * [`carriers`] — symbols ↔ oversampled, guard-padded carrier waveform.
//! * [`mapping`] — the compression maps onto `b` / `q_c` and their inverses,
//!   plus the carrier-index ↔ λ-bin reorientation.
//! * [`txrx`] — the assembled transmitter/receiver with power calibration
//!   and pre-/post-compensation bookkeeping.

pub mod carriers;
pub mod constellation;
pub mod mapping;
pub mod txrx;

pub use carriers::{build_carrier_wave, recover_symbols, CarrierShape};
pub use constellation::{cross32, hard_decision};
pub use mapping::{
    compress_b, compress_qc, expand_b, expand_qc, lambda_from_carrier, carrier_from_lambda,
    ClampStats,
};
pub use txrx::{Modem, ModemConfig, Modulation, RxDiagnostics, RxFrame, TxFrame};

/// Modem-level configuration failures (bad geometry, impossible requests).
#[derive(Debug, thiserror::Error)]
pub enum ModemError {
    #[error("overhead factor eta must exceed 1, got {0}")]
    EtaOutOfRange(f64),
    #[error("carrier count must be positive")]
    NoCarriers,
    #[error("synthesis grid length must be even, got {0}")]
    OddGrid(usize),
    #[error("power calibration did not converge: {0}")]
    CalibrationDiverged(String),
    #[error(transparent)]
    Nft(#[from] nft::NftError),
}
