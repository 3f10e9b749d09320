//! Small named trees used throughout the tests and examples.

use crate::tree::{GameTree, Player, Position};

fn complete_positions(depth: usize, branching: u32) -> Vec<Position> {
    let mut out = Vec::new();
    let mut frontier = vec![Position::root()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for b in 0..branching {
                next.push(p.child(b));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Complete binary tree of depth 4, no early terminals.
pub fn ex1() -> GameTree {
    GameTree::complete(4, 2).expect("valid tree")
}

/// Complete binary tree of depth 8; the enlarged variant of [`ex1`].
pub fn ex1_deep() -> GameTree {
    GameTree::complete(8, 2).expect("valid tree")
}

/// [`ex1`] with `0/0` cut off and made taboo for II.
pub fn ex2() -> GameTree {
    let cut = Position(vec![0, 0]);
    let nodes = complete_positions(4, 2)
        .into_iter()
        .filter(|p| !(cut.is_prefix_of(p) && p != &cut))
        .map(|p| {
            let tag = (p == cut).then_some(Player::II);
            (p, tag)
        });
    GameTree::from_positions(4, nodes).expect("valid tree")
}

/// A chain `. -> 0 -> 0/0`, then complete binary branching down to depth 4.
pub fn ex3() -> GameTree {
    let mut nodes = vec![Position(vec![0]), Position(vec![0, 0])];
    for tail in complete_positions(2, 2) {
        let mut moves = vec![0, 0];
        moves.extend(tail.0);
        nodes.push(Position(moves));
    }
    GameTree::from_positions(4, nodes.into_iter().map(|p| (p, None))).expect("valid tree")
}

/// [`ex3`] with `0/0/1` turned into an early terminal taboo for II.
pub fn ex3_with_taboo() -> GameTree {
    let cut = Position(vec![0, 0, 1]);
    let t = ex3();
    let nodes = t
        .node_ids()
        .skip(1)
        .map(|n| t.position(n))
        .filter(|p| !(cut.is_prefix_of(p) && p != &cut))
        .map(|p| {
            let tag = (p == cut).then_some(Player::II);
            (p, tag)
        })
        .collect::<Vec<_>>();
    GameTree::from_positions(4, nodes).expect("valid tree")
}

/// A single path `. -> 0 -> 0/0`, depth bound 2: exactly one play.
pub fn single_path() -> GameTree {
    GameTree::from_positions(2, [(Position(vec![0]), None), (Position(vec![0, 0]), None)])
        .expect("valid tree")
}
