//! Graphviz export of trees and coverings.
//!
//! Nodes are numbered in preorder, so the output only depends on the tree's
//! shape. Taboo nodes are drawn as boxes (`taboo I`) or diamonds (`taboo II`);
//! leaves in the payoff set are double circles.

use std::fmt::Write;

use crate::covering::Covering;
use crate::error::{Error, Result};
use crate::payoff::LeafSet;
use crate::tree::{GameTree, NodeId, Player};
use crate::unravel::{BaseCovering, Decoration};

fn check_size(nodes: usize, limit: usize) -> Result<()> {
    if nodes > limit {
        return Err(Error::ResourceLimit {
            what: "exported nodes",
            limit,
        });
    }
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Writes the nodes and edges of one tree; `label` names each node.
fn write_tree(
    out: &mut String,
    prefix: &str,
    tree: &GameTree,
    payoff: Option<&LeafSet>,
    label: &dyn Fn(NodeId) -> String,
) -> Vec<usize> {
    let order = tree.descendants(tree.root());
    let mut rank = vec![0; tree.len()];
    for (i, &n) in order.iter().enumerate() {
        rank[n.index()] = i;
    }
    for &n in &order {
        let mut attrs = format!("label=\"{}\"", escape(&label(n)));
        match tree.taboo(n) {
            Some(Player::I) => attrs.push_str(", shape=box, xlabel=\"taboo I\""),
            Some(Player::II) => attrs.push_str(", shape=diamond, xlabel=\"taboo II\""),
            None if payoff.is_some_and(|a| a.contains(n)) => attrs.push_str(", shape=doublecircle"),
            None => {}
        }
        writeln!(out, "  {prefix}{} [{attrs}];", rank[n.index()]).unwrap();
    }
    for &n in &order {
        for &c in tree.children(n) {
            writeln!(
                out,
                "  {prefix}{} -> {prefix}{} [label=\"{}\"];",
                rank[n.index()],
                rank[c.index()],
                tree.label(c)
            )
            .unwrap();
        }
    }
    rank
}

pub fn tree_to_dot(tree: &GameTree, payoff: Option<&LeafSet>, limit: usize) -> Result<String> {
    check_size(tree.len(), limit)?;
    let mut out = String::from("digraph game {\n  node [shape=circle];\n");
    write_tree(&mut out, "n", tree, payoff, &|n| {
        tree.position(n).to_string()
    });
    out.push_str("}\n");
    Ok(out)
}

/// Both trees of a covering side by side, with the position map drawn as
/// dashed links from source to target. `decorate` may relabel source nodes.
pub fn covering_to_dot(
    c: &Covering,
    payoff: Option<&LeafSet>,
    decorate: &dyn Fn(NodeId) -> Option<String>,
    limit: usize,
) -> Result<String> {
    let (src, tgt) = (c.source(), c.target());
    check_size(src.len() + tgt.len(), limit)?;
    let mut out = String::from("digraph covering {\n  node [shape=circle];\n");
    out.push_str("  subgraph cluster_target {\n  label=\"target\";\n");
    let tgt_rank = write_tree(&mut out, "t", tgt, payoff, &|n| tgt.position(n).to_string());
    out.push_str("  }\n  subgraph cluster_source {\n  label=\"source\";\n");
    let src_rank = write_tree(&mut out, "s", src, None, &|n| {
        decorate(n).unwrap_or_else(|| tgt.position(c.image(n)).to_string())
    });
    out.push_str("  }\n");
    for n in src.descendants(src.root()) {
        writeln!(
            out,
            "  s{} -> t{} [style=dashed, constraint=false, arrowhead=none];",
            src_rank[n.index()],
            tgt_rank[c.image(n).index()]
        )
        .unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

/// A base covering, with claims and replies spelled out on source nodes:
/// `(a,{X})` for a claim, `(1,b)` for an accept, `(2,r,b)` for a challenge.
pub fn base_covering_to_dot(base: &BaseCovering, limit: usize) -> Result<String> {
    let decorate = |n: NodeId| match base.decoration(n) {
        Decoration::Plain => None,
        Decoration::Claim { label, claimed } => {
            let set: Vec<String> = claimed.iter().map(|p| p.to_string()).collect();
            Some(format!("({label},{{{}}})", set.join(",")))
        }
        Decoration::Accept { label } => Some(format!("(1,{label})")),
        Decoration::Challenge { challenged, label } => Some(format!("(2,{challenged},{label})")),
    };
    covering_to_dot(base.covering(), Some(base.payoff()), &decorate, limit)
}
