//! Asynchronous template games.
//!
//! Asynchronous graphs and their reshuffling 2-categories, Gray comonoids and
//! bicomodules, the template of games and strategies, and an interpreter for
//! multiplicative additive linear logic.

pub mod asynch_graph;
pub mod comod;
pub mod error;
pub mod mall;
pub mod reshuffle;
pub mod template;

pub use error::{Error, Result};
