use crate::error::{Error, Result};
use crate::payoff::{meets_table, LeafSet};
use crate::tree::{GameTree, MoveLabel, NodeId, Position};

/// The minimal non-terminal extensions of `p⌢a` from which no leaf of `A` is
/// reachable, in lexicographic order. Always an antichain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSet {
    /// The level-`k` position `p`.
    pub parent: NodeId,
    /// I's move `a` at `p`.
    pub label: MoveLabel,
    pub members: Vec<NodeId>,
}

impl ZSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn positions(&self, tree: &GameTree) -> Vec<Position> {
        self.members.iter().map(|&m| tree.position(m)).collect()
    }

    /// Members selected by a subset mask.
    pub fn subset(&self, mask: u64) -> Vec<NodeId> {
        self.members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &m)| m)
            .collect()
    }
}

/// Preorder scan below `pa` that only descends through nodes meeting `A`.
pub(crate) fn z_members(tree: &GameTree, meets: &[bool], pa: NodeId) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut stack: Vec<NodeId> = tree.children(pa).iter().rev().copied().collect();
    while let Some(q) = stack.pop() {
        if tree.is_terminal(q) {
            continue;
        }
        if meets[q.index()] {
            stack.extend(tree.children(q).iter().rev());
        } else {
            out.push(q);
        }
    }
    out
}

pub fn compute_z(tree: &GameTree, a: &LeafSet, p: &Position, label: MoveLabel) -> Result<ZSet> {
    let parent = tree.lookup(p)?;
    let pa = tree.lookup(&p.child(label))?;
    if tree.is_terminal(pa) {
        return Err(Error::Precondition(format!(
            "{} is terminal",
            tree.position(pa)
        )));
    }
    let meets = meets_table(tree, a);
    Ok(ZSet {
        parent,
        label,
        members: z_members(tree, &meets, pa),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::payoff::{meets_a, realize, ClosedSpec, PayoffSpec};

    fn pos(s: &str) -> Position {
        s.parse().unwrap()
    }

    /// Direct transcription of the four defining conditions.
    fn z_oracle(tree: &GameTree, a: &LeafSet, pa: NodeId) -> Vec<Position> {
        let base = tree.position(pa);
        let mut out: Vec<Position> = tree
            .node_ids()
            .filter(|&q| {
                let qp = tree.position(q);
                base.is_prefix_of(&qp)
                    && qp != base
                    && !tree.is_terminal(q)
                    && !meets_a(tree, q, a)
                    && tree
                        .path(q)
                        .into_iter()
                        .filter(|&r| tree.depth(r) > base.len() && r != q)
                        .all(|r| meets_a(tree, r, a))
            })
            .map(|q| tree.position(q))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn ex1_examples() {
        let t = fixtures::ex1();
        let a = realize(&t, &PayoffSpec::Closed(ClosedSpec::new(vec![pos("1")]))).unwrap();
        let z1 = compute_z(&t, &a, &Position::root(), 1).unwrap();
        assert_eq!(z1.positions(&t), vec![pos("1/0"), pos("1/1")]);
        let z0 = compute_z(&t, &a, &Position::root(), 0).unwrap();
        assert!(z0.is_empty());
        for label in [0, 1] {
            let pa = t.find(&Position(vec![label])).unwrap();
            assert_eq!(
                compute_z(&t, &a, &Position::root(), label)
                    .unwrap()
                    .positions(&t),
                z_oracle(&t, &a, pa)
            );
        }
    }

    #[test]
    fn everything_in_a_gives_empty_z() {
        let t = fixtures::ex2();
        let a = LeafSet::all(&t);
        for p in [".", "0", "1/1"] {
            let p = pos(p);
            for label in [0, 1] {
                let pa = p.child(label);
                if t.find(&pa).is_some_and(|n| !t.is_terminal(n)) {
                    assert!(compute_z(&t, &a, &p, label).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn deeper_generator() {
        let t = fixtures::ex1();
        let a = realize(&t, &PayoffSpec::Closed(ClosedSpec::new(vec![pos("0/1/1")]))).unwrap();
        let z = compute_z(&t, &a, &Position::root(), 0).unwrap();
        assert_eq!(z.positions(&t), vec![pos("0/1/1")]);
        let pa = t.find(&pos("0")).unwrap();
        assert_eq!(z.positions(&t), z_oracle(&t, &a, pa));
    }

    #[test]
    fn terminal_move_is_rejected() {
        let t = fixtures::ex2();
        let a = LeafSet::empty(&t);
        assert!(compute_z(&t, &a, &pos("0"), 0).is_err());
        assert!(compute_z(&t, &a, &pos("0"), 7).is_err());
    }
}
