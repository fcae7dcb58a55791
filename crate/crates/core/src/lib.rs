//! Exact enumeration for the game of plates and olives.
//!
//! Games of length `n` are first returns to the empty table after `2n + 2`
//! moves; their number `M_n` is the number of topological equivalence classes
//! of excellent Morse functions on the 2-sphere with `n` saddle points.
//!
//! * [`partition`]: states, moves and the move graph.
//! * [`game`]: validation, exhaustive enumeration, skeletons, statistics.
//! * [`counting`]: arbitrary-precision walk counts and reference sequences.
//! * [`analysis`]: growth ratios and bound comparisons.
//! * [`cli`] and [`verify`]: output formats, the count cache, and check suites.

pub mod analysis;
pub mod cli;
pub mod counting;
pub mod error;
pub mod game;
pub mod partition;
pub mod verify;

pub use error::{Error, Result};
