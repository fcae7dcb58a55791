use thiserror::Error;

use crate::partition::{Move, Partition};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("move {mv} is not legal at {state}")]
    IllegalMove { state: Partition, mv: Move },

    #[error("table emptied before the final move (after move {step})")]
    PrematureEmpty { step: usize },

    #[error("game does not return to the empty table (final state {state})")]
    NotClosed { state: Partition },

    #[error("n = {n} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },

    #[error("state space limit reached: {limit} interned partitions")]
    ResourceLimit { limit: usize },

    #[error("partition {state} exceeds the interner weight bound {max_weight}")]
    WeightBound { state: Partition, max_weight: u32 },

    #[error("invalid Young's lattice walk at step {step}: {reason}")]
    InvalidWalk { step: usize, reason: String },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}
