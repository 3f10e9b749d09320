//! Seeded random games for fuzzing and property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::payoff::ClosedSpec;
use crate::tree::{GameTree, NodeId, Player, TreeBuilder};

/// Shape of a random game.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameShape {
    /// Depth bound; rounded up to even, at least 2.
    pub depth: usize,
    /// Maximum number of moves at a position; at least 1.
    pub branching: u32,
    /// Maximum number of early terminals.
    pub taboos: usize,
    /// Maximum number of closed-set generators.
    pub generators: usize,
}

impl Default for GameShape {
    fn default() -> Self {
        GameShape {
            depth: 4,
            branching: 3,
            taboos: 3,
            generators: 3,
        }
    }
}

/// A random tree: every position below the depth bound has `1..=branching`
/// moves, and up to `taboos` positions are cut early with a random taboo tag.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, shape: &GameShape) -> GameTree {
    let depth = (shape.depth + shape.depth % 2).max(2);
    let branching = shape.branching.max(1);
    let mut builder = TreeBuilder::new(depth);
    let mut budget = shape.taboos;
    let mut stack = vec![(NodeId::ROOT, 0usize)];
    while let Some((node, d)) = stack.pop() {
        if d == depth {
            continue;
        }
        if d >= 1 && budget > 0 && rng.gen_bool(0.1) {
            budget -= 1;
            let loser = if rng.gen_bool(0.5) {
                Player::I
            } else {
                Player::II
            };
            builder.set_taboo(node, loser);
            continue;
        }
        let width = rng.gen_range(1..=branching);
        for label in 0..width {
            let child = builder
                .add_child(node, label)
                .expect("within the depth bound");
            stack.push((child, d + 1));
        }
    }
    builder.finish().expect("random trees are well formed")
}

/// Up to `count` distinct generators among the non-terminal positions of depth
/// `min_depth..D`, in lexicographic order.
pub fn random_closed_spec<R: Rng + ?Sized>(
    rng: &mut R,
    tree: &GameTree,
    count: usize,
    min_depth: usize,
) -> ClosedSpec {
    let candidates: Vec<NodeId> = tree
        .node_ids()
        .filter(|&n| {
            let d = tree.depth(n);
            d >= min_depth.max(1) && d < tree.depth_bound() && !tree.is_terminal(n)
        })
        .collect();
    let n = rng.gen_range(0..=count.min(candidates.len()));
    let mut picked: Vec<_> = candidates
        .choose_multiple(rng, n)
        .map(|&c| tree.position(c))
        .collect();
    picked.sort();
    ClosedSpec::new(picked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let shape = GameShape {
            depth: 5,
            branching: 3,
            taboos: 2,
            generators: 3,
        };
        for _ in 0..50 {
            let t = random_tree(&mut rng, &shape);
            assert_eq!(t.depth_bound(), 6);
            let early = t.plays().into_iter().filter(|&x| t.depth(x) < 6).count();
            assert!(early <= 2);
            assert!(t.node_ids().all(|n| t.children(n).len() <= 3));
            let spec = random_closed_spec(&mut rng, &t, 3, 2);
            assert!(spec.generators.len() <= 3);
            assert!(spec.generator_nodes(&t).is_ok());
            assert!(spec.generators.iter().all(|g| g.len() >= 2));
        }
    }

    #[test]
    fn same_seed_same_game() {
        let shape = GameShape::default();
        let a = random_tree(&mut ChaCha8Rng::seed_from_u64(3), &shape);
        let b = random_tree(&mut ChaCha8Rng::seed_from_u64(3), &shape);
        assert_eq!(a, b);
    }
}
