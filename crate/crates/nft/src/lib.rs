//! Direct and inverse scattering transforms for the dual-polarisation
//! (Manakov) Zakharov–Shabat system, plus the spectral-domain helpers a
//! transmission system built on them needs.
//!
//! The 3×3 scattering problem reads
//!
//! ```text
//! dv/dτ = [ −jλ    q1    q2 ] v,      v → (1, 0, 0)ᵀ e^{−jλτ}  as τ → −∞,
//!         [ −q1*   jλ     0 ]
//!         [ −q2*    0    jλ ]
//! ```
//!
//! and the scattering coefficients are read off at τ → +∞ as
//! `a(λ) = e^{jλτ} v₀` and `b_p(λ) = e^{−jλτ} v_p`. On the real line they
//! satisfy `|a|² + |b1|² + |b2|² = 1`, which is what makes the nonlinear
//! spectrum a faithful information carrier.
//!
//! What lives where:
//!
//! * [`grid`] — the sampling grid (step, offset) and its conjugate λ grid.
//! * [`forward`] — direct scattering by marching transfer matrices across
//!   the samples: a second-order split scheme for production, and an exact
//!   per-cell exponential for reference
//! * [`tree`] — the same split scheme evaluated on the full conjugate grid
//!   at once via a product tree of matrix polynomials, O(N log² N).
//! * [`inverse`] — synthesis of the time-domain waveform from (a, b1, b2)
//!   by coefficient-domain layer peeling; the exact algebraic inverse of
//!   the forward split scheme on the conjugate grid.
//! * [`spectrum`] — operations on scattering data: minimum-phase
//!   reconstruction of `a` from `b`, distance evolution, the b ↔ q_c
//!   reflection-coefficient maps, and nonlinear Parseval energies.

pub mod forward;
pub mod grid;
pub mod inverse;
pub mod spectrum;
pub mod tree;

pub use forward::{scatter_exact, scatter_march};
pub use grid::ScatteringGrid;
pub use inverse::synthesise;
pub use spectrum::{
    a_from_b, advance, b_pair_from_qc, energy_from_b, energy_from_qc, qc_from_ab,
    unimodularity_residual,
};
pub use tree::scatter_fast;

use signal_core::C64;

/// Continuous-spectrum scattering data sampled on a λ grid.
#[derive(Debug, Clone)]
pub struct ScatterData {
    pub a: Vec<C64>,
    pub b1: Vec<C64>,
    pub b2: Vec<C64>,
}

/// Failures with a numerical-domain cause (invalid spectra, singular
/// synthesis); these abort an experiment rather than silently degrading it.
#[derive(Debug, thiserror::Error)]
pub enum NftError {
    #[error("spectrum magnitude |b|^2 = {found} at bin {bin} is not below 1; cannot reconstruct a")]
    SpectrumMagnitude { bin: usize, found: f64 },
    #[error("layer peeling hit a singular leading coefficient at layer {layer}")]
    SingularSynthesis { layer: usize },
    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },
}
