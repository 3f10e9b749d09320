//! Payoff sets: explicit leaf sets and their symbolic descriptions.
//!
//! A closed set is always given by generators: the set of full-depth leaves
//! extending none of the generator positions. Closedness is therefore structural;
//! every finite set would otherwise be trivially clopen.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{GameTree, NodeId, Position};

/// Explicit set of depth-`D` leaves of one tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeafSet {
    member: Vec<bool>,
    count: usize,
}

impl LeafSet {
    pub fn empty(tree: &GameTree) -> LeafSet {
        LeafSet {
            member: vec![false; tree.len()],
            count: 0,
        }
    }

    /// Every depth-`D` leaf.
    pub fn all(tree: &GameTree) -> LeafSet {
        LeafSet::from_nodes(tree, tree.leaves()).expect("leaves are full depth")
    }

    pub fn from_nodes(tree: &GameTree, nodes: impl IntoIterator<Item = NodeId>) -> Result<LeafSet> {
        let mut set = LeafSet::empty(tree);
        for n in nodes {
            if !tree.contains(n) || tree.depth(n) != tree.depth_bound() {
                let shown = if tree.contains(n) {
                    tree.position(n).to_string()
                } else {
                    format!("#{}", n.0)
                };
                return Err(Error::InvalidSpec(format!(
                    "payoff sets contain full-depth plays only, got {shown}"
                )));
            }
            if !set.member[n.index()] {
                set.member[n.index()] = true;
                set.count += 1;
            }
        }
        Ok(set)
    }

    pub(crate) fn check_tree(&self, tree: &GameTree) -> Result<()> {
        if self.member.len() == tree.len() {
            Ok(())
        } else {
            Err(Error::TreeMismatch(format!(
                "leaf set built for a tree with {} nodes, used on one with {}",
                self.member.len(),
                tree.len()
            )))
        }
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.member.get(node.index()).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| NodeId(i as u32))
    }

    /// The other depth-`D` leaves of `tree`.
    pub fn complement(&self, tree: &GameTree) -> LeafSet {
        LeafSet::from_nodes(
            tree,
            tree.leaves().into_iter().filter(|&l| !self.contains(l)),
        )
        .expect("leaves are full depth")
    }

    pub fn union(&self, other: &LeafSet) -> LeafSet {
        let member: Vec<bool> = self
            .member
            .iter()
            .zip(&other.member)
            .map(|(a, b)| *a || *b)
            .collect();
        let count = member.iter().filter(|m| **m).count();
        LeafSet { member, count }
    }
}

/// Generators of a closed set: excluded are exactly the leaves extending one of them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosedSpec {
    pub generators: Vec<Position>,
}

impl ClosedSpec {
    pub fn new(generators: Vec<Position>) -> ClosedSpec {
        ClosedSpec { generators }
    }

    /// Resolves every generator to a node, enforcing depth `1..D` and non-terminality.
    pub fn generator_nodes(&self, tree: &GameTree) -> Result<Vec<NodeId>> {
        self.generators
            .iter()
            .map(|g| {
                let node = tree.lookup(g)?;
                if g.is_empty() || g.len() >= tree.depth_bound() || tree.is_terminal(node) {
                    return Err(Error::InvalidSpec(format!(
                        "generator {g} must be non-terminal with depth in 1..{}",
                        tree.depth_bound()
                    )));
                }
                Ok(node)
            })
            .collect()
    }
}

impl fmt::Display for ClosedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PayoffSpec {
    Closed(ClosedSpec),
    /// Complement of the closed set with these generators.
    Open(ClosedSpec),
    UnionOfClosed(Vec<ClosedSpec>),
}

/// Explicit leaf set described by `spec` on `tree`.
pub fn realize(tree: &GameTree, spec: &PayoffSpec) -> Result<LeafSet> {
    match spec {
        PayoffSpec::Closed(c) => realize_closed(tree, c),
        PayoffSpec::Open(c) => Ok(realize_closed(tree, c)?.complement(tree)),
        PayoffSpec::UnionOfClosed(parts) => {
            if parts.is_empty() {
                return Err(Error::InvalidSpec(
                    "union of closed sets must be non-empty".into(),
                ));
            }
            let mut acc = LeafSet::empty(tree);
            for part in parts {
                acc = acc.union(&realize_closed(tree, part)?);
            }
            Ok(acc)
        }
    }
}

pub fn realize_closed(tree: &GameTree, spec: &ClosedSpec) -> Result<LeafSet> {
    let gens = spec.generator_nodes(tree)?;
    let mut excluded = vec![false; tree.len()];
    for g in gens {
        excluded[g.index()] = true;
    }
    // Parents precede children, so one forward pass propagates exclusion.
    for n in tree.node_ids().skip(1) {
        if excluded[tree.parent(n).unwrap().index()] {
            excluded[n.index()] = true;
        }
    }
    LeafSet::from_nodes(
        tree,
        tree.leaves().into_iter().filter(|l| !excluded[l.index()]),
    )
}

/// For every node, whether some depth-`D` leaf at or below it lies in `a`.
pub fn meets_table(tree: &GameTree, a: &LeafSet) -> Vec<bool> {
    let mut meets: Vec<bool> = tree.node_ids().map(|n| a.contains(n)).collect();
    for n in tree.node_ids().rev() {
        if meets[n.index()] {
            if let Some(p) = tree.parent(n) {
                meets[p.index()] = true;
            }
        }
    }
    meets
}

/// Whether the subtree at `q` contains a leaf of `a`.
pub fn meets_a(tree: &GameTree, q: NodeId, a: &LeafSet) -> bool {
    tree.descendants(q).into_iter().any(|n| a.contains(n))
}

/// Whether membership in `s` depends only on the length-`d` prefix of a leaf.
pub fn is_d_decided(tree: &GameTree, s: &LeafSet, d: usize) -> bool {
    let mut verdict: Vec<Option<bool>> = vec![None; tree.len()];
    for leaf in tree.leaves() {
        let prefix = tree.ancestor_at(leaf, d);
        let inside = s.contains(leaf);
        match verdict[prefix.index()] {
            None => verdict[prefix.index()] = Some(inside),
            Some(v) if v != inside => return false,
            Some(_) => {}
        }
    }
    true
}

/// Swaps closed and open descriptions with the same generators.
pub fn complement_spec(spec: &PayoffSpec) -> Result<PayoffSpec> {
    match spec {
        PayoffSpec::Closed(c) => Ok(PayoffSpec::Open(c.clone())),
        PayoffSpec::Open(c) => Ok(PayoffSpec::Closed(c.clone())),
        PayoffSpec::UnionOfClosed(_) => Err(Error::InvalidSpec(
            "the complement of a union of closed sets has no closed/open description".into(),
        )),
    }
}

/// Generators for the complement of a `d`-decided set: the non-terminal depth-`d`
/// positions whose leaves all lie in `s`. Terminal depth-`d` positions carry no
/// leaves and are skipped.
pub fn decided_set_to_closed_spec(tree: &GameTree, s: &LeafSet, d: usize) -> Result<ClosedSpec> {
    s.check_tree(tree)?;
    if d == 0 || d >= tree.depth_bound() {
        return Err(Error::Precondition(format!(
            "decision depth must lie in 1..{}, got {d}",
            tree.depth_bound()
        )));
    }
    if !is_d_decided(tree, s, d) {
        return Err(Error::Precondition(format!("set is not {d}-decided")));
    }
    let mut all_inside = vec![true; tree.len()];
    for leaf in tree.leaves() {
        if !s.contains(leaf) {
            all_inside[tree.ancestor_at(leaf, d).index()] = false;
        }
    }
    let generators = tree
        .descendants(tree.root())
        .into_iter()
        .filter(|&n| tree.depth(n) == d && !tree.is_terminal(n) && all_inside[n.index()])
        .map(|n| tree.position(n))
        .collect();
    Ok(ClosedSpec { generators })
}
