//! Dual-polarisation optical fibre channel in physical units.
//!
//! The propagation model is the polarisation-averaged (Manakov) nonlinear
//! Schrödinger equation with chromatic dispersion, Kerr nonlinearity with
//! the 8/9 cross-polarisation factor, and scalar attenuation, integrated by
//! a symmetric split-step scheme whose forward and backward sweeps are
//! exact mutual inverses at matched step size (see [`ssfm::FibreSpan`]).
//! Amplified links chain identical spans with lumped gain and additive
//! white Gaussian noise loading after each span ([`link::Link`]).
//!
//! [`constants::SystemParams`] carries the reference system: 12 × 80 km of
//! standard fibre sampled at 448 GS/s, with the derived normalisation
//! scales that connect this crate's physical fields to the dimensionless
//! scattering-domain crates.

pub mod constants;
pub mod link;
pub mod ssfm;

pub use constants::SystemParams;
pub use link::{add_white_noise, Link};
pub use ssfm::FibreSpan;
