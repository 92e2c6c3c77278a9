//! The five experiment drivers.  Each returns every result row it managed
//! to compute together with the overall outcome, so callers can flush
//! partial results before reporting a failure.

pub mod b2b;
pub mod compare;
pub mod dbp;
pub mod entropy;
pub mod eta;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::report::ResultRow;
use crate::RunError;

/// Run the configured experiment.  Rows accumulated before any failure are
/// returned alongside the error so they can still be written out.
pub fn execute(cfg: &ExperimentConfig) -> (Vec<ResultRow>, Result<(), RunError>) {
    match cfg.experiment {
        ExperimentKind::CompareBQc => compare::run(cfg),
        ExperimentKind::EtaSweep => eta::run(cfg),
        ExperimentKind::EntropyStudy => entropy::run(cfg),
        ExperimentKind::B2bDistortion => b2b::run(cfg),
        ExperimentKind::DbpResidual => dbp::run(cfg),
    }
}
