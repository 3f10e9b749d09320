//! Brute-force oracles shared by the integration tests. They only read the
//! tree's shape and taboos; no solver or strategy code is reused.

#![allow(dead_code)]

use unravel::payoff::LeafSet;
use unravel::tree::{GameTree, NodeId, Player};

/// The winner of a finished play, read off the tree directly.
pub fn play_winner(tree: &GameTree, a: &LeafSet, x: NodeId) -> Player {
    match tree.taboo(x) {
        Some(loser) => loser.opponent(),
        None if tree.depth(x) == tree.depth_bound() => {
            if a.contains(x) {
                Player::I
            } else {
                Player::II
            }
        }
        None => panic!("unfinished play"),
    }
}

/// Non-terminal positions where `player` moves.
pub fn decision_nodes(tree: &GameTree, player: Player) -> Vec<NodeId> {
    tree.node_ids()
        .filter(|&n| !tree.children(n).is_empty() && tree.depth(n) % 2 == player.index())
        .collect()
}

/// Whether `player` wins every play when choosing `choice[i]` at `nodes[i]`.
fn wins_with(
    tree: &GameTree,
    a: &LeafSet,
    player: Player,
    nodes: &[NodeId],
    choice: &[usize],
) -> bool {
    let mut slot = vec![usize::MAX; tree.len()];
    for (i, &n) in nodes.iter().enumerate() {
        slot[n.index()] = i;
    }
    let mut stack = vec![tree.root()];
    while let Some(n) = stack.pop() {
        let kids = tree.children(n);
        if kids.is_empty() {
            if play_winner(tree, a, n) != player {
                return false;
            }
        } else if slot[n.index()] != usize::MAX {
            stack.push(kids[choice[slot[n.index()]]]);
        } else {
            stack.extend_from_slice(kids);
        }
    }
    true
}

/// Enumerates every strategy of `player` (one move per decision node).
/// `None` when `player` has more than `max_nodes` decision nodes.
pub fn has_winning_strategy(
    tree: &GameTree,
    a: &LeafSet,
    player: Player,
    max_nodes: usize,
) -> Option<bool> {
    let nodes = decision_nodes(tree, player);
    if nodes.len() > max_nodes {
        return None;
    }
    let radix: Vec<usize> = nodes.iter().map(|&n| tree.children(n).len()).collect();
    let mut choice = vec![0; nodes.len()];
    loop {
        if wins_with(tree, a, player, &nodes, &choice) {
            return Some(true);
        }
        // Mixed-radix increment.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Some(false);
            }
            choice[i] += 1;
            if choice[i] < radix[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Every leaf `owner` loses when moving by `choose`, found by branching over
/// the opponent's moves.
pub fn losing_leaves(
    tree: &GameTree,
    a: &LeafSet,
    owner: Player,
    choose: impl Fn(NodeId) -> NodeId,
) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut stack = vec![tree.root()];
    while let Some(n) = stack.pop() {
        let kids = tree.children(n);
        if kids.is_empty() {
            if play_winner(tree, a, n) != owner {
                out.push(n);
            }
        } else if tree.depth(n) % 2 == owner.index() {
            stack.push(choose(n));
        } else {
            stack.extend_from_slice(kids);
        }
    }
    out
}
