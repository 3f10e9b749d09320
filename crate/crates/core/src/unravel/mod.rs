//! Unraveling closed payoff sets.
//!
//! [`build_base_covering`] constructs, for a closed set `A` and an even level `k`,
//! a `k`-covering of the game tree in which the pulled-back payoff is decided by
//! move `k + 2`: at level `k + 1` player I names a move `a` together with a set
//! `X` of positions it claims to win from, and player II either accepts (the
//! game goes on, ending at the first claimed or conceded position) or challenges
//! one claimed position and the game continues inside its subtree.
//!
//! [`unravel_union`] chains such coverings to unravel a finite union of closed sets.

mod base;
mod transform;
mod union;
mod zset;

pub use base::{build_base_covering, BaseCovering, Branch, Decoration};
pub use union::{unravel_payoff, unravel_union, StageSummary, Unraveled};
pub use zset::{compute_z, ZSet};

/// Default cap on `|Z|` for a single `(p, a)`.
pub const Z_MAX: usize = 10;
/// Default cap on the node count of a constructed source tree.
pub const NODE_MAX: usize = 200_000;

/// Hard ceiling on `|Z|`; subsets are enumerated as bit masks.
const Z_CEILING: usize = 24;

/// Size guards for covering construction. Exceeding either is an error, never
/// a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub z_max: usize,
    pub node_max: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            z_max: Z_MAX,
            node_max: NODE_MAX,
        }
    }
}

impl Caps {
    /// Defaults, with the node cap overridden by `UNRAVEL_NODE_MAX` when set.
    pub fn from_env() -> Caps {
        let mut caps = Caps::default();
        if let Some(n) = std::env::var("UNRAVEL_NODE_MAX")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            caps.node_max = n;
        }
        caps
    }
}

/// Odd levels are rounded up: a `(k+1)`-covering is also a `k`-covering.
pub fn round_up_even(k: usize) -> usize {
    k + k % 2
}
