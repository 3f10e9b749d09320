//! Brute-force ground truth: backward induction, taboo-strategies, and pruning
//! of taboo-determined positions with strategy transfer back to the full tree.

use crate::error::{Error, Result};
use crate::payoff::LeafSet;
use crate::strategy::{evaluate_play, Strategy};
use crate::tree::{GameTree, NodeId, PlayOutcome, Player, Position, TreeBuilder};

/// A winner together with a winning strategy for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub winner: Player,
    pub strategy: Strategy,
}

/// Labels every node with the player who wins from there, given the winner of each play.
pub fn backward_induction(tree: &GameTree, leaf_winner: impl Fn(NodeId) -> Player) -> Vec<Player> {
    let mut labels = vec![Player::I; tree.len()];
    for n in tree.node_ids().rev() {
        labels[n.index()] = if tree.is_terminal(n) {
            leaf_winner(n)
        } else {
            let mover = tree.mover(n);
            if tree.children(n).iter().any(|c| labels[c.index()] == mover) {
                mover
            } else {
                mover.opponent()
            }
        };
    }
    labels
}

/// Least winning child where `player` wins, least child elsewhere.
fn strategy_from_labels(tree: &GameTree, labels: &[Player], player: Player) -> Strategy {
    Strategy::from_fn(tree, player, |n| {
        let cs = tree.children(n);
        cs.iter()
            .copied()
            .find(|c| labels[c.index()] == player)
            .unwrap_or(cs[0])
    })
    .expect("children are valid choices")
}

/// Solves `G(a; tree)` exactly.
pub fn solve(tree: &GameTree, a: &LeafSet) -> Solution {
    let labels = backward_induction(tree, |x| {
        evaluate_play(tree, x, a).expect("leaf set belongs to this tree")
    });
    let winner = labels[tree.root().index()];
    Solution {
        winner,
        strategy: strategy_from_labels(tree, &labels, winner),
    }
}

/// Who wins each play when `player` is trying to force a taboo for the opponent.
fn taboo_goal(tree: &GameTree, x: NodeId, player: Player) -> Player {
    match tree.classify_play(x) {
        Ok(o) if o == PlayOutcome::taboo_for(player.opponent()) => player,
        _ => player.opponent(),
    }
}

/// A strategy on a game subtree, carried together with that subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeStrategy {
    pub tree: GameTree,
    pub strategy: Strategy,
}

/// A strategy for `player` in the subtree at `p` whose every consistent play is
/// taboo for the opponent, if one exists.
pub fn taboo_strategy(
    tree: &GameTree,
    p: &Position,
    player: Player,
) -> Result<Option<SubtreeStrategy>> {
    let sub = tree.subtree_at(p)?;
    let labels = backward_induction(&sub, |x| taboo_goal(&sub, x, player));
    if labels[sub.root().index()] != player {
        return Ok(None);
    }
    let strategy = strategy_from_labels(&sub, &labels, player);
    Ok(Some(SubtreeStrategy {
        tree: sub,
        strategy,
    }))
}

/// For each node, whether `player` can force a taboo for the opponent from there.
pub fn taboo_determined(tree: &GameTree, player: Player) -> Vec<bool> {
    backward_induction(tree, |x| taboo_goal(tree, x, player))
        .into_iter()
        .map(|w| w == player)
        .collect()
}

/// `T'`: the positions of `T` none of whose prefixes (itself included) is
/// taboo-determined. A child of a determined position need not be determined
/// itself (the mover may have a second, open option), so `T'` drops whole
/// subtrees below `T*`.
#[derive(Debug, Clone)]
pub struct PrunedTree {
    tree: GameTree,
    origin: Vec<NodeId>,
    image: Vec<Option<NodeId>>,
    determined: Vec<Option<Player>>,
    witnesses: [Strategy; 2],
}

impl PrunedTree {
    pub fn tree(&self) -> &GameTree {
        &self.tree
    }

    /// The node of the original tree for a node of `T'`.
    pub fn origin(&self, node: NodeId) -> NodeId {
        self.origin[node.index()]
    }

    /// The node of `T'` for a node of the original tree, if it survived.
    pub fn image(&self, node: NodeId) -> Option<NodeId> {
        self.image[node.index()]
    }

    /// Which player, if any, a node of the original tree is taboo-determined for.
    pub fn determined_for(&self, node: NodeId) -> Option<Player> {
        self.determined[node.index()]
    }

    /// The taboo-determined positions `T*` in arena order.
    pub fn removed(&self) -> Vec<NodeId> {
        (0..self.determined.len() as u32)
            .map(NodeId)
            .filter(|n| self.determined[n.index()].is_some())
            .collect()
    }

    /// Every position of the original tree missing from `T'`: `T*` and all
    /// positions below it.
    pub fn dropped(&self) -> Vec<NodeId> {
        (0..self.image.len() as u32)
            .map(NodeId)
            .filter(|n| self.image[n.index()].is_none())
            .collect()
    }

    /// Strategy on the original tree that is a taboo-strategy below every
    /// position determined for its owner.
    pub fn witness(&self, player: Player) -> &Strategy {
        &self.witnesses[player.index()]
    }

    /// `A ∩ [T']` as a leaf set of `T'`.
    pub fn restrict_payoff(&self, a: &LeafSet) -> LeafSet {
        LeafSet::from_nodes(
            &self.tree,
            self.tree
                .leaves()
                .into_iter()
                .filter(|&l| a.contains(self.origin(l))),
        )
        .expect("leaves are full depth")
    }
}

#[derive(Debug, Clone)]
pub enum PruneOutcome {
    Pruned(PrunedTree),
    /// The root itself is taboo-determined; the witness wins outright.
    RootDetermined {
        player: Player,
        witness: Strategy,
    },
}

pub fn prune(tree: &GameTree) -> Result<PruneOutcome> {
    let for_i = taboo_determined(tree, Player::I);
    let for_ii = taboo_determined(tree, Player::II);
    let mut determined = Vec::with_capacity(tree.len());
    for n in tree.node_ids() {
        determined.push(match (for_i[n.index()], for_ii[n.index()]) {
            (true, true) => {
                return Err(Error::Invariant(format!(
                    "{} is taboo-determined for both players",
                    tree.position(n)
                )))
            }
            (true, false) => Some(Player::I),
            (false, true) => Some(Player::II),
            (false, false) => None,
        });
    }
    let witnesses = [Player::I, Player::II].map(|p| {
        Strategy::from_fn(tree, p, |n| {
            let cs = tree.children(n);
            cs.iter()
                .copied()
                .find(|c| determined[c.index()] == Some(p))
                .unwrap_or(cs[0])
        })
        .expect("children are valid choices")
    });
    if let Some(p) = determined[tree.root().index()] {
        return Ok(PruneOutcome::RootDetermined {
            player: p,
            witness: witnesses[p.index()].clone(),
        });
    }

    let mut builder = TreeBuilder::new(tree.depth_bound());
    let mut origin = vec![tree.root()];
    let mut image = vec![None; tree.len()];
    image[tree.root().index()] = Some(NodeId::ROOT);
    for n in tree.node_ids().skip(1) {
        if determined[n.index()].is_some() {
            continue;
        }
        let Some(parent_image) = image[tree.parent(n).unwrap().index()] else {
            continue;
        };
        let id = builder.add_child(parent_image, tree.label(n))?;
        origin.push(n);
        image[n.index()] = Some(id);
    }
    let pruned = builder
        .finish()
        .map_err(|e| Error::Invariant(format!("pruned tree is not pruned: {e}")))?;
    Ok(PruneOutcome::Pruned(PrunedTree {
        tree: pruned,
        origin,
        image,
        determined,
        witnesses,
    }))
}

#[derive(Clone, Copy)]
enum Transfer {
    Inside(NodeId),
    Witness,
    Off,
}

/// Lifts a strategy on `T'` back to the full tree: follow it inside `T'`, switch
/// to the stored taboo-strategy upon first entering a position determined for
/// the owner.
pub fn transfer_from_pruned(
    tree: &GameTree,
    pruned: &PrunedTree,
    s: &Strategy,
) -> Result<Strategy> {
    s.fits(pruned.tree())?;
    if pruned.determined.len() != tree.len() {
        return Err(Error::TreeMismatch(
            "pruned tree comes from another tree".into(),
        ));
    }
    let owner = s.owner();
    let witness = pruned.witness(owner);
    let mut state = vec![Transfer::Off; tree.len()];
    let mut choices = vec![None; tree.len()];
    state[tree.root().index()] = Transfer::Inside(pruned.tree().root());
    for n in tree.node_ids() {
        if tree.is_terminal(n) {
            continue;
        }
        let mover = tree.mover(n);
        let chosen = match state[n.index()] {
            Transfer::Inside(m) if mover == owner => {
                let c = pruned.origin(s.choice(m).expect("strategy is total"));
                state[c.index()] = Transfer::Inside(pruned.image(c).unwrap());
                c
            }
            Transfer::Inside(_) => {
                for &c in tree.children(n) {
                    state[c.index()] = match (pruned.image(c), pruned.determined_for(c)) {
                        (Some(m), _) => Transfer::Inside(m),
                        (None, Some(p)) if p == owner => Transfer::Witness,
                        _ => {
                            return Err(Error::Invariant(format!(
                                "opponent entered {} which is taboo-determined against the owner",
                                tree.position(c)
                            )))
                        }
                    };
                }
                tree.children(n)[0]
            }
            Transfer::Witness => {
                for &c in tree.children(n) {
                    state[c.index()] = Transfer::Witness;
                }
                if mover == owner {
                    witness.choice(n).unwrap()
                } else {
                    tree.children(n)[0]
                }
            }
            Transfer::Off => tree.children(n)[0],
        };
        if mover == owner {
            choices[n.index()] = Some(chosen);
        }
    }
    Ok(Strategy::from_choices(owner, choices))
}

/// Solves via pruning: determinacy of the pruned game transferred to the full one.
pub fn solve_via_pruning(tree: &GameTree, a: &LeafSet) -> Result<Solution> {
    match prune(tree)? {
        PruneOutcome::RootDetermined { player, witness } => Ok(Solution {
            winner: player,
            strategy: witness,
        }),
        PruneOutcome::Pruned(pruned) => {
            let inner = solve(pruned.tree(), &pruned.restrict_payoff(a));
            let strategy = transfer_from_pruned(tree, &pruned, &inner.strategy)?;
            Ok(Solution {
                winner: inner.winner,
                strategy,
            })
        }
    }
}
