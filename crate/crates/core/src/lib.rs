//! Finite games with taboos: solving by backward induction, pruning
//! taboo-determined positions, and unraveling closed and open payoffs through
//! coverings.
//!
//! A [`tree::GameTree`] has an even depth bound `D`; leaves at depth `D` stand
//! for infinite plays, while earlier terminals carry a taboo naming the player
//! who loses there. Player I wins a play when it lies in the payoff set.
//!
//! The main entry points:
//!
//! - [`solver::solve`] and [`solver::solve_via_pruning`] find the winner and a
//!   winning strategy.
//! - [`unravel::build_base_covering`] builds a covering of a game under which a
//!   closed payoff pulls back to a set decided after finitely many moves.
//! - [`unravel::unravel_union`] chains such coverings for finite unions of
//!   closed sets.
//! - [`covering::solve_via_covering`] solves the target game through the
//!   covering and maps the winning strategy back.
//!
//! Game files are read and written by [`format`]; see `examples/` for
//! end-to-end use.

pub mod cli;
pub mod covering;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod payoff;
pub mod random;
pub mod report;
pub mod solver;
pub mod strategy;
pub mod tree;
pub mod unravel;

pub use error::{Error, Result};
