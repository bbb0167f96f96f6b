//! Multiplicative additive linear logic on top of the template: formulas,
//! one-sided sequent proofs, their interpretation as games and strategies,
//! and the `agames` command line.

pub mod cli;
mod formula;
mod interp;
pub mod laws;
mod proof;

pub use formula::{parse_formula, Formula};
pub use interp::{interpret_formula, interpret_proof, sequent_game, AtomEnvironment};
pub use proof::{parse_proof, Proof, Sequent};
