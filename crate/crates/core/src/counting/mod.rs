//! Exact counts: games via first-return walk DP, closed walks with interim
//! returns, Young's-lattice walks, the lower-bound lift, and the reference
//! sequences they are checked against. No floating point anywhere here.

mod lift;
mod sequences;
mod walks;

pub use lift::{lift_young_walk, young_closed_walks};
pub use sequences::*;
pub use walks::{
    count_closed_walks, count_games, count_young_walks, Counter, StateSpace, WalkCounter,
    WalkSpec, DEFAULT_MAX_STATES,
};
