use thiserror::Error;

use crate::tree::Position;

/// Errors raised by tree construction, payoff realization, and the covering machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position {0} is not in the tree")]
    UnknownPosition(Position),

    #[error("position {0} is not terminal, so it is not a play")]
    NotAPlay(Position),

    #[error("invalid game tree: {0}")]
    InvalidTree(String),

    #[error("invalid payoff specification: {0}")]
    InvalidSpec(String),

    #[error("strategy does not fit this tree: {0}")]
    StrategyMismatch(String),

    #[error("tree mismatch: {0}")]
    TreeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("covering does not unravel A at depth {0}")]
    NotUnraveled(usize),

    #[error("resource limit exceeded: {what} would exceed {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("stage {stage}: {source}")]
    Stage {
        stage: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
