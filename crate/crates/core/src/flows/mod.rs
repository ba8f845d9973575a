//! Continuous signals seen through dyadic sampling grids.

mod discretize;
mod dyadic;
mod inclusion;
mod refute;
mod signal;
mod tower;

use thiserror::Error;

use crate::family::FamilyError;
use crate::limits::LimitError;

pub use discretize::{discretize, refine, refine_recursive, refine_step, seq_name, subsample, Discretization, RefineMode};
pub use dyadic::{Dyadic, ParseDyadicError};
pub use inclusion::{inclusion_demo, inclusion_tower, increment_discretization, InclusionReport, IncrementLattice};
pub use refute::{refute_search, saw_teeth, Candidate, RefuteOutcome};
pub use signal::{FlowSet, Piece, Signal, SignalSpec};
pub use tower::{dyadic_tower, dyadic_tower_with, reconstruct, thread_of_flow, Reconstruction, Tower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("bad signal: {0}")]
    BadSignal(String),
    #[error("flow is not in the set")]
    FlowNotInSet,
    #[error("inconsistent thread: {0}")]
    InconsistentThread(String),
    #[error("switch resolution 2^-{m} is too coarse for level {k}")]
    BadResolution { k: u32, m: u32 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}
