//! Experiment drivers for the transmission laboratory.
//!
//! Five reproducible studies share one pipeline (multiplexer → fibre or
//! matched-noise channel → receiver → estimators): a modulation comparison,
//! an overhead sweep, a received-symbol entropy study, a noiseless
//! transceiver-distortion loopback, and a backpropagation-residual study
//! with a conventional transceiver.  Each is driven by a JSON config, seeded
//! deterministically, and persists one CSV of result rows plus a JSON
//! manifest.  The `nfdm-lab` binary wraps them behind subcommands.

pub mod config;
pub mod experiments;
pub mod report;
pub mod rng;
pub mod runner;

use thiserror::Error;

/// Failure modes of a run, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum RunError {
    /// Bad configuration, arguments, or output environment (exit code 2).
    #[error("config error: {0}")]
    Config(String),
    /// The physics/numerics left its valid domain (exit code 3).
    #[error("numerical failure: {0}")]
    Numerics(String),
}

impl RunError {
    pub fn config(msg: impl Into<String>) -> Self {
        RunError::Config(msg.into())
    }

    pub fn numerics(msg: impl Into<String>) -> Self {
        RunError::Numerics(msg.into())
    }

    /// Process exit code contract: 2 config, 3 numerics.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerics(_) => 3,
        }
    }
}

impl From<modem::ModemError> for RunError {
    fn from(e: modem::ModemError) -> Self {
        match e {
            modem::ModemError::EtaOutOfRange(_)
            | modem::ModemError::NoCarriers
            | modem::ModemError::OddGrid(_) => RunError::Config(e.to_string()),
            modem::ModemError::CalibrationDiverged(_) | modem::ModemError::Nft(_) => {
                RunError::Numerics(e.to_string())
            }
        }
    }
}

impl From<nft::NftError> for RunError {
    fn from(e: nft::NftError) -> Self {
        RunError::Numerics(e.to_string())
    }
}
