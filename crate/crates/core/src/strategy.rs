//! Strategies, consistency, and evaluation of plays.

use rand::Rng;

use crate::error::{Error, Result};
use crate::payoff::LeafSet;
use crate::tree::{GameTree, NodeId, PlayOutcome, Player};

/// A total strategy: a chosen child for every non-terminal node where the owner moves.
///
/// A strategy is tied to the arena it was built for; node ids are meaningless
/// on any other tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strategy {
    owner: Player,
    choices: Vec<Option<NodeId>>,
}

impl Strategy {
    pub fn from_fn(
        tree: &GameTree,
        owner: Player,
        mut choose: impl FnMut(NodeId) -> NodeId,
    ) -> Result<Strategy> {
        let mut choices = vec![None; tree.len()];
        for node in tree.node_ids() {
            if tree.mover(node) != owner || tree.is_terminal(node) {
                continue;
            }
            let child = choose(node);
            if !tree.contains(child) || tree.parent(child) != Some(node) {
                return Err(Error::StrategyMismatch(format!(
                    "choice at {} is not a child",
                    tree.position(node)
                )));
            }
            choices[node.index()] = Some(child);
        }
        Ok(Strategy { owner, choices })
    }

    /// Plays the least move everywhere.
    pub fn lexicographic(tree: &GameTree, owner: Player) -> Strategy {
        Strategy::from_fn(tree, owner, |n| tree.children(n)[0]).expect("children are valid choices")
    }

    /// Uniformly random choice at every decision node.
    pub fn random<R: Rng + ?Sized>(tree: &GameTree, owner: Player, rng: &mut R) -> Strategy {
        Strategy::from_fn(tree, owner, |n| {
            let cs = tree.children(n);
            cs[rng.gen_range(0..cs.len())]
        })
        .expect("children are valid choices")
    }

    pub(crate) fn from_choices(owner: Player, choices: Vec<Option<NodeId>>) -> Strategy {
        Strategy { owner, choices }
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    /// The chosen child at `node`, if the owner moves there.
    pub fn choice(&self, node: NodeId) -> Option<NodeId> {
        self.choices.get(node.index()).copied().flatten()
    }

    /// Overrides the choice at one decision node.
    pub fn set_choice(&mut self, tree: &GameTree, node: NodeId, child: NodeId) -> Result<()> {
        if tree.mover(node) != self.owner || tree.parent(child) != Some(node) {
            return Err(Error::StrategyMismatch(format!(
                "cannot choose {} at {}",
                tree.position(child),
                tree.position(node)
            )));
        }
        self.choices[node.index()] = Some(child);
        Ok(())
    }

    /// Checks that this strategy is total on `tree` for its owner.
    pub fn fits(&self, tree: &GameTree) -> Result<()> {
        if self.choices.len() != tree.len() {
            return Err(Error::StrategyMismatch(format!(
                "strategy covers {} nodes, tree has {}",
                self.choices.len(),
                tree.len()
            )));
        }
        for node in tree.node_ids() {
            let needs = tree.mover(node) == self.owner && !tree.is_terminal(node);
            match self.choice(node) {
                Some(c) if needs && tree.parent(c) == Some(node) => {}
                None if !needs => {}
                _ => {
                    return Err(Error::StrategyMismatch(format!(
                        "bad entry at {}",
                        tree.position(node)
                    )))
                }
            }
        }
        Ok(())
    }

    /// Decision nodes in arena order with their choices.
    pub fn entries(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.choices
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (NodeId(i as u32), c)))
    }
}

/// Whether every move of the owner along `x` agrees with `s`.
pub fn is_consistent(tree: &GameTree, x: NodeId, s: &Strategy) -> bool {
    let path = tree.path(x);
    path.windows(2)
        .all(|w| tree.mover(w[0]) != s.owner() || s.choice(w[0]) == Some(w[1]))
}

/// All plays consistent with `s`, in lexicographic order. Only the opponent's
/// moves branch.
pub fn plays_consistent(tree: &GameTree, s: &Strategy) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut stack = vec![tree.root()];
    while let Some(node) = stack.pop() {
        if tree.is_terminal(node) {
            out.push(node);
        } else if tree.mover(node) == s.owner() {
            let c = s
                .choice(node)
                .expect("strategy must be total on the tree it is used with");
            stack.push(c);
        } else {
            stack.extend(tree.children(node).iter().rev());
        }
    }
    out
}

/// Winner of a single play: I wins iff the play is in `a` or is taboo for II.
pub fn evaluate_play(tree: &GameTree, x: NodeId, a: &LeafSet) -> Result<Player> {
    a.check_tree(tree)?;
    Ok(match tree.classify_play(x)? {
        PlayOutcome::Infinite if a.contains(x) => Player::I,
        PlayOutcome::Infinite => Player::II,
        PlayOutcome::TabooII => Player::I,
        PlayOutcome::TabooI => Player::II,
    })
}

/// First consistent play (lexicographically) that the owner of `s` loses.
pub fn losing_play(tree: &GameTree, a: &LeafSet, s: &Strategy) -> Option<NodeId> {
    plays_consistent(tree, s)
        .into_iter()
        .find(|&x| evaluate_play(tree, x, a).map_or(true, |w| w != s.owner()))
}

pub fn is_winning_strategy(tree: &GameTree, a: &LeafSet, s: &Strategy) -> bool {
    s.fits(tree).is_ok() && losing_play(tree, a, s).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tree::Position;

    fn pos(s: &str) -> Position {
        s.parse().unwrap()
    }

    fn always(tree: &GameTree, owner: Player, label: u32) -> Strategy {
        Strategy::from_fn(tree, owner, |n| {
            tree.child(n, label).unwrap_or(tree.children(n)[0])
        })
        .unwrap()
    }

    fn starting_with(tree: &GameTree, first: u32) -> LeafSet {
        LeafSet::from_nodes(
            tree,
            tree.leaves()
                .into_iter()
                .filter(|&l| tree.position(l).0[0] == first),
        )
        .unwrap()
    }

    #[test]
    fn consistency_examples() {
        let t = fixtures::ex1();
        let s = always(&t, Player::I, 0);
        assert!(is_consistent(&t, t.root(), &s));
        assert!(is_consistent(&t, t.find(&pos("0/1/0/1")).unwrap(), &s));
        assert!(!is_consistent(&t, t.find(&pos("1/0/0/0")).unwrap(), &s));
    }

    #[test]
    fn plays_consistent_matches_filter() {
        let t = fixtures::ex1();
        let s = always(&t, Player::I, 0);
        let filtered: Vec<NodeId> = t
            .plays()
            .into_iter()
            .filter(|&x| is_consistent(&t, x, &s))
            .collect();
        let got = plays_consistent(&t, &s);
        assert_eq!(got, filtered);
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|&x| {
            let p = t.position(x);
            p.0[0] == 0 && p.0[2] == 0
        }));
    }

    #[test]
    fn plays_consistent_ex2_avoids_taboo() {
        let t = fixtures::ex2();
        let s = always(&t, Player::II, 1);
        let mut got: Vec<Position> = plays_consistent(&t, &s)
            .into_iter()
            .map(|x| t.position(x))
            .collect();
        got.sort();
        let expected: Vec<Position> = ["0/1/0/1", "0/1/1/1", "1/1/0/1", "1/1/1/1"]
            .iter()
            .map(|s| pos(s))
            .collect();
        assert_eq!(got, expected);
        let oracle: Vec<Position> = t
            .plays()
            .into_iter()
            .filter(|&x| is_consistent(&t, x, &s))
            .map(|x| t.position(x))
            .collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn single_path_has_one_play() {
        let t = fixtures::single_path();
        for owner in [Player::I, Player::II] {
            let s = Strategy::lexicographic(&t, owner);
            assert_eq!(plays_consistent(&t, &s).len(), 1);
        }
    }

    #[test]
    fn evaluate_examples() {
        let t = fixtures::ex2();
        let empty = LeafSet::empty(&t);
        let taboo = t.find(&pos("0/0")).unwrap();
        assert_eq!(evaluate_play(&t, taboo, &empty).unwrap(), Player::I);
        let leaf = t.find(&pos("1/1/0/0")).unwrap();
        assert_eq!(evaluate_play(&t, leaf, &empty).unwrap(), Player::II);
        let a = LeafSet::from_nodes(&t, [leaf]).unwrap();
        assert_eq!(evaluate_play(&t, leaf, &a).unwrap(), Player::I);
        let inner = t.find(&pos("1")).unwrap();
        assert!(evaluate_play(&t, inner, &a).is_err());
    }

    #[test]
    fn winning_strategy_examples() {
        let t = fixtures::ex1();
        let a = starting_with(&t, 0);
        assert!(is_winning_strategy(&t, &a, &always(&t, Player::I, 0)));
        assert!(!is_winning_strategy(&t, &a, &always(&t, Player::I, 1)));
        let t2 = fixtures::ex2();
        assert!(is_winning_strategy(
            &t2,
            &LeafSet::empty(&t2),
            &always(&t2, Player::II, 1)
        ));
    }

    #[test]
    fn fits_rejects_foreign_strategy() {
        let s = Strategy::lexicographic(&fixtures::ex1(), Player::I);
        assert!(s.fits(&fixtures::ex2()).is_err());
        assert!(s.fits(&fixtures::ex1()).is_ok());
    }
}
