//! Deterministic random-stream derivation.
//!
//! Every random draw in an experiment comes from a counter-keyed stream: the
//! 256-bit ChaCha key encodes (run seed, experiment id, frame index, purpose,
//! span index), so any frame/span can be regenerated in isolation and
//! parallel scheduling can never change results.

use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

/// What a derived stream is consumed for; part of the key so the same frame
/// index can feed several independent streams.
#[derive(Debug, Clone, Copy)]
pub enum Purpose {
    /// Payload constellation symbols.
    Symbols = 1,
    /// In-line amplifier noise (one stream per span).
    AmplifierNoise = 2,
    /// Calibration ensemble symbols.
    Calibration = 3,
    /// Gaussian surrogate draws for entropy bias correction.
    Surrogate = 4,
    /// Lumped receiver-side noise for the back-to-back comparison.
    MatchedNoise = 5,
}

/// Derive the deterministic stream for one (frame, purpose, span) triple.
pub fn stream(seed: u64, experiment: u16, frame: u64, purpose: Purpose, span: u32) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..10].copy_from_slice(&experiment.to_le_bytes());
    key[10..18].copy_from_slice(&frame.to_le_bytes());
    key[18..20].copy_from_slice(&(purpose as u16).to_le_bytes());
    key[20..24].copy_from_slice(&span.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Pack an (outer, inner) loop pair into one frame index, for experiments
/// whose unit of repetition is two-level (e.g. input realisation × noise
/// realisation).
pub fn nested_frame(outer: u32, inner: u32) -> u64 {
    ((outer as u64) << 32) | inner as u64
}
