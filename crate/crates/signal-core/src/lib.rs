//! Shared signal-processing primitives for the transmission lab.
//!
//! Everything downstream (scattering transforms, modem, fibre propagation,
//! estimators) sits on the same few conventions, so they live here:
//!
//! * **Centred DFT pair** — transforms that treat index `n/2` as time/frequency
//!   zero, so spectra and waveforms are naturally symmetric around the middle
//!   of the grid. Grid lengths are required to be even.
//! * **Centred zero-padding/cropping** — bandwidth/duration changes that keep
//!   the origin in the middle.
//! * **Discrete Hilbert transform** — harmonic conjugate used to rebuild a
//!   minimum-phase spectrum from its log-magnitude.
//! * **Unit helpers** — dBm/W conversions, grid energy/power, and the
//!   normalisation pair that maps physical (SI) waveforms onto the
//!   dimensionless retarded-time frame used by the scattering code.

pub mod fourier;
pub mod hilbert;
pub mod units;

pub use fourier::{
    angular_freqs, crop_centered, dft_centered, fft_freqs, fft_in_place, idft_centered,
    ifft_in_place, zero_pad_centered, FftPair, C64,
};
pub use hilbert::harmonic_conjugate;
pub use units::{dbm_to_watts, energy, mean_power, watts_to_dbm, Normalisation};
