//! Transmission-quality estimators.
//!
//! Everything a receiver reports about recovered symbols lives here:
//!
//! * [`evm`] — error-vector magnitude and its decibel Q-factor form;
//! * [`ber`] — hard-decision symbol/bit error rates and the
//!   Gaussian-threshold Q-factor;
//! * [`mi`] — a memoryless auxiliary-channel estimate of mutual
//!   information, the standard achievable-rate lower bound;
//! * [`entropy`] — differential entropy: Gaussian closed forms, a
//!   Kozachenko–Leonenko k-nearest-neighbour estimator with a
//!   matched-Gaussian bias correction, and a streaming covariance
//!   accumulator for building the Gaussian references.
//!
//! All entropies and information rates are in bits (per complex symbol or
//! per real dimension as documented on each function).

pub mod ber;
pub mod entropy;
pub mod evm;
pub mod mi;

pub use ber::{bit_error_rate, q_factor_from_ber_db, symbol_error_rate};
pub use entropy::{
    diagonal_entropy_bits, gaussian_entropy_bits, knn_entropy_bits, knn_entropy_corrected_bits,
    redundancy, RunningCovariance,
};
pub use evm::{error_vector_magnitude, evm_q_db};
pub use mi::{auxiliary_mi_bits, ls_gain};
