//! Receiver-side equalisation for the fibre channel.
//!
//! Two digital-backpropagation engines invert the deterministic part of a
//! multi-span link by running the split-step method backwards:
//!
//! * [`DigitalBackpropagation`] — per-span inversion that removes each
//!   amplifier's gain and then backpropagates the lossy span.  With the same
//!   step size as the forward simulation it is the exact algebraic inverse of
//!   a noiseless link; with an independent (coarser) step it is the
//!   conventional receiver-side estimate.
//! * [`PathAveragedBackpropagation`] — a single lossless backward pass over
//!   the whole link using the path-averaged nonlinear coefficient, the usual
//!   low-complexity approximation.
//!
//! The crate also carries a root-raised-cosine reference transceiver
//! ([`NyquistTransceiver`]) and a least-squares common-phase aligner, which
//! together form the conventional linear-multiplexing baseline that the
//! backpropagation experiments are measured against.

pub mod dbp;
pub mod nyquist;
pub mod phase;

pub use dbp::{DigitalBackpropagation, PathAveragedBackpropagation};
pub use nyquist::NyquistTransceiver;
pub use phase::align_common_phase;
