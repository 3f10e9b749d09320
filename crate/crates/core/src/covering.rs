//! Coverings of game trees with taboos.
//!
//! A [`Covering`] pairs a source tree with a length-preserving, taboo-respecting
//! position map onto a target tree, and a strategy map that turns source
//! strategies into target strategies. The strategy map carries a constructive
//! lift: for every target play consistent with the mapped strategy it names a
//! source play that projects into it, or that ends in a taboo for the strategy's
//! owner. The checkers here verify those conditions exhaustively or by seeded
//! sampling.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::payoff::{is_d_decided, LeafSet};
use crate::solver::{backward_induction, Solution};
use crate::strategy::{evaluate_play, is_consistent, losing_play, plays_consistent, Strategy};
use crate::tree::{GameTree, NodeId, Player, Position};

/// Strategy map of a covering together with its lift witness.
///
/// Implementations must be pure: the same inputs always produce the same outputs.
pub trait StrategyTransform: Send + Sync {
    /// Maps a strategy on the source tree to a strategy on the target tree.
    fn apply(&self, strategy: &Strategy) -> Result<Strategy>;

    /// Lifts a target play consistent with `apply(strategy)` to a source play.
    fn lift(&self, strategy: &Strategy, play: NodeId) -> Result<NodeId>;

    fn lift_many(&self, strategy: &Strategy, plays: &[NodeId]) -> Result<Vec<NodeId>> {
        plays.iter().map(|&x| self.lift(strategy, x)).collect()
    }
}

struct IdentityTransform;

impl StrategyTransform for IdentityTransform {
    fn apply(&self, strategy: &Strategy) -> Result<Strategy> {
        Ok(strategy.clone())
    }

    fn lift(&self, _strategy: &Strategy, play: NodeId) -> Result<NodeId> {
        Ok(play)
    }
}

struct ComposedTransform {
    outer: Arc<dyn StrategyTransform>,
    inner: Arc<dyn StrategyTransform>,
}

impl StrategyTransform for ComposedTransform {
    fn apply(&self, strategy: &Strategy) -> Result<Strategy> {
        self.outer.apply(&self.inner.apply(strategy)?)
    }

    fn lift(&self, strategy: &Strategy, play: NodeId) -> Result<NodeId> {
        let middle = self.inner.apply(strategy)?;
        let x = self.outer.lift(&middle, play)?;
        self.inner.lift(strategy, x)
    }

    fn lift_many(&self, strategy: &Strategy, plays: &[NodeId]) -> Result<Vec<NodeId>> {
        let middle = self.inner.apply(strategy)?;
        let xs = self.outer.lift_many(&middle, plays)?;
        self.inner.lift_many(strategy, &xs)
    }
}

/// A `level`-covering of `target` by `source`.
#[derive(Clone)]
pub struct Covering {
    source: Arc<GameTree>,
    target: Arc<GameTree>,
    level: usize,
    position_map: Arc<Vec<NodeId>>,
    transform: Arc<dyn StrategyTransform>,
}

impl fmt::Debug for Covering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Covering")
            .field("source_nodes", &self.source.len())
            .field("target_nodes", &self.target.len())
            .field("level", &self.level)
            .finish()
    }
}

impl Covering {
    pub fn new(
        source: Arc<GameTree>,
        target: Arc<GameTree>,
        level: usize,
        position_map: Vec<NodeId>,
        transform: Arc<dyn StrategyTransform>,
    ) -> Result<Covering> {
        if position_map.len() != source.len() {
            return Err(Error::TreeMismatch(format!(
                "position map has {} entries for {} source nodes",
                position_map.len(),
                source.len()
            )));
        }
        if let Some(bad) = position_map.iter().find(|n| !target.contains(**n)) {
            return Err(Error::TreeMismatch(format!(
                "position map points at missing node #{}",
                bad.0
            )));
        }
        if source.depth_bound() != target.depth_bound() {
            return Err(Error::TreeMismatch("depth bounds differ".into()));
        }
        Ok(Covering {
            source,
            target,
            level,
            position_map: Arc::new(position_map),
            transform,
        })
    }

    /// The trivial covering of a tree by itself; a covering at every level.
    pub fn identity(tree: Arc<GameTree>) -> Covering {
        let map = tree.node_ids().collect();
        let level = tree.depth_bound();
        Covering {
            source: tree.clone(),
            target: tree,
            level,
            position_map: Arc::new(map),
            transform: Arc::new(IdentityTransform),
        }
    }

    pub fn source(&self) -> &Arc<GameTree> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GameTree> {
        &self.target
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn image(&self, node: NodeId) -> NodeId {
        self.position_map[node.index()]
    }

    pub fn position_map(&self) -> &[NodeId] {
        &self.position_map
    }

    pub fn transform(&self) -> &Arc<dyn StrategyTransform> {
        &self.transform
    }

    /// Applies the strategy map, checking ownership and totality of the result.
    pub fn map_strategy(&self, strategy: &Strategy) -> Result<Strategy> {
        strategy.fits(&self.source)?;
        let mapped = self.transform.apply(strategy)?;
        if mapped.owner() != strategy.owner() {
            return Err(Error::Invariant("strategy map changed the owner".into()));
        }
        mapped.fits(&self.target)?;
        Ok(mapped)
    }

    pub fn lift(&self, strategy: &Strategy, play: NodeId) -> Result<NodeId> {
        self.transform.lift(strategy, play)
    }
}

/// Which position-map condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapCondition {
    Monotone,
    LengthPreserving,
    TabooI,
    TabooII,
    LevelIdentity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapViolation {
    pub node: Position,
    pub condition: MapCondition,
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} fails at source position {}",
            self.condition, self.node
        )
    }
}

/// Exhaustive scan of the position-map conditions and the level identity.
pub fn check_position_map(c: &Covering) -> std::result::Result<(), MapViolation> {
    let (src, tgt) = (c.source(), c.target());
    let fail = |n: NodeId, condition| MapViolation {
        node: src.position(n),
        condition,
    };
    for n in src.node_ids() {
        let img = c.image(n);
        if tgt.depth(img) != src.depth(n) {
            return Err(fail(n, MapCondition::LengthPreserving));
        }
        if let Some(p) = src.parent(n) {
            if tgt.parent(img) != Some(c.image(p)) {
                return Err(fail(n, MapCondition::Monotone));
            }
        }
        match tgt.taboo(img) {
            Some(Player::I) if src.taboo(n) != Some(Player::I) => {
                return Err(fail(n, MapCondition::TabooI))
            }
            Some(Player::II) if src.taboo(n) != Some(Player::II) => {
                return Err(fail(n, MapCondition::TabooII))
            }
            _ => {}
        }
        if src.depth(n) <= c.level()
            && (src.position(n) != tgt.position(img) || src.taboo(n) != tgt.taboo(img))
        {
            return Err(fail(n, MapCondition::LevelIdentity));
        }
    }
    let shallow = |t: &GameTree| t.node_ids().filter(|&n| t.depth(n) <= c.level()).count();
    if shallow(src) != shallow(tgt) {
        return Err(fail(src.root(), MapCondition::LevelIdentity));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityFailure {
    pub trial: usize,
    pub cutoff: usize,
    pub position: Position,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityReport {
    pub trials: usize,
    pub failure: Option<LocalityFailure>,
}

impl LocalityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Mutation test of the strategy map: two source strategies agreeing below a
/// random cutoff must map to target strategies agreeing below the same cutoff.
/// Also checks that the map is the identity below the covering level.
pub fn check_strategy_locality(c: &Covering, trials: usize, seed: u64) -> Result<LocalityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (src, tgt) = (c.source(), c.target());
    for trial in 0..trials {
        let owner = if rng.gen_bool(0.5) {
            Player::I
        } else {
            Player::II
        };
        let first = Strategy::random(src, owner, &mut rng);
        let cutoff = rng.gen_range(0..=src.depth_bound());
        let mut second = first.clone();
        for (node, _) in first.entries() {
            if src.depth(node) >= cutoff && rng.gen_bool(0.5) {
                let cs = src.children(node);
                second.set_choice(src, node, cs[rng.gen_range(0..cs.len())])?;
            }
        }
        let (m1, m2) = (c.map_strategy(&first)?, c.map_strategy(&second)?);
        for (node, choice) in m1.entries() {
            let depth = tgt.depth(node);
            if depth < cutoff && m2.choice(node) != Some(choice) {
                return Ok(LocalityReport {
                    trials,
                    failure: Some(LocalityFailure {
                        trial,
                        cutoff,
                        position: tgt.position(node),
                        reason: "mapped strategies differ below the cutoff",
                    }),
                });
            }
            if depth < c.level() {
                let same = src
                    .find(&tgt.position(node))
                    .and_then(|s| first.choice(s))
                    .map(|s| src.label(s));
                if same != Some(tgt.label(choice)) {
                    return Ok(LocalityReport {
                        trials,
                        failure: Some(LocalityFailure {
                            trial,
                            cutoff,
                            position: tgt.position(node),
                            reason: "strategy map is not the identity below the level",
                        }),
                    });
                }
            }
        }
    }
    Ok(LocalityReport {
        trials,
        failure: None,
    })
}

/// Outcome of lifting one target play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    pub play: NodeId,
    pub lifted: NodeId,
    /// The lift is a play of the source tree.
    pub is_play: bool,
    /// The lift is consistent with the source strategy.
    pub consistent: bool,
    /// The image of the lift is a prefix of the play.
    pub projects_into: bool,
    /// The image equals the play, or the lift is taboo for the strategy's owner.
    pub exact_or_taboo: bool,
}

impl LiftReport {
    pub fn is_valid(&self) -> bool {
        self.is_play && self.consistent && self.projects_into && self.exact_or_taboo
    }
}

fn lift_report(c: &Covering, strategy: &Strategy, play: NodeId, lifted: NodeId) -> LiftReport {
    let (src, tgt) = (c.source(), c.target());
    if !src.contains(lifted) {
        return LiftReport {
            play,
            lifted,
            is_play: false,
            consistent: false,
            projects_into: false,
            exact_or_taboo: false,
        };
    }
    let img = c.image(lifted);
    LiftReport {
        play,
        lifted,
        is_play: src.is_terminal(lifted),
        consistent: is_consistent(src, lifted, strategy),
        projects_into: tgt.is_prefix(img, play),
        exact_or_taboo: img == play || src.taboo(lifted) == Some(strategy.owner()),
    }
}

/// Lifts one play and checks the three lifting conditions.
pub fn verify_lift(c: &Covering, strategy: &Strategy, play: NodeId) -> Result<LiftReport> {
    let mapped = c.map_strategy(strategy)?;
    let tgt = c.target();
    if !tgt.contains(play) || !tgt.is_terminal(play) {
        return Err(Error::Precondition(
            "lifts are defined for plays only".into(),
        ));
    }
    if !is_consistent(tgt, play, &mapped) {
        return Err(Error::Precondition(format!(
            "play {} is not consistent with the mapped strategy",
            tgt.position(play)
        )));
    }
    let lifted = c.lift(strategy, play)?;
    Ok(lift_report(c, strategy, play, lifted))
}

/// Lifts every play consistent with the mapped strategy.
pub fn verify_all_lifts(c: &Covering, strategy: &Strategy) -> Result<Vec<LiftReport>> {
    let mapped = c.map_strategy(strategy)?;
    let plays = plays_consistent(c.target(), &mapped);
    let lifted = c.transform().lift_many(strategy, &plays)?;
    Ok(plays
        .into_iter()
        .zip(lifted)
        .map(|(x, l)| lift_report(c, strategy, x, l))
        .collect())
}

/// Source leaves whose image lies in `a`.
pub fn pullback(c: &Covering, a: &LeafSet) -> LeafSet {
    let src = c.source();
    LeafSet::from_nodes(
        src,
        src.leaves().into_iter().filter(|&l| a.contains(c.image(l))),
    )
    .expect("leaves are full depth")
}

/// `outer ∘ inner`: covers `outer.target` by `inner.source`.
pub fn compose(outer: &Covering, inner: &Covering) -> Result<Covering> {
    if !Arc::ptr_eq(inner.target(), outer.source()) && **inner.target() != **outer.source() {
        return Err(Error::TreeMismatch(
            "inner covering must target the outer covering's source".into(),
        ));
    }
    let map = inner
        .position_map()
        .iter()
        .map(|&m| outer.image(m))
        .collect();
    Covering::new(
        inner.source().clone(),
        outer.target().clone(),
        outer.level().min(inner.level()),
        map,
        Arc::new(ComposedTransform {
            outer: outer.transform().clone(),
            inner: inner.transform().clone(),
        }),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftStratCounterexample {
    pub sample: usize,
    pub strategy: Strategy,
    /// A target play, consistent with the mapped strategy, that its owner loses.
    pub play: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftStratReport {
    pub checked: usize,
    pub winner: Player,
    pub counterexample: Option<LiftStratCounterexample>,
}

impl LiftStratReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Random strategy for `player` that picks a winning child wherever one exists.
fn random_winning_strategy<R: Rng>(
    tree: &GameTree,
    labels: &[Player],
    player: Player,
    rng: &mut R,
) -> Strategy {
    Strategy::from_fn(tree, player, |n| {
        let cs = tree.children(n);
        let winning: Vec<NodeId> = cs
            .iter()
            .copied()
            .filter(|c| labels[c.index()] == player)
            .collect();
        let pool = if winning.is_empty() { cs } else { &winning[..] };
        pool[rng.gen_range(0..pool.len())]
    })
    .expect("children are valid choices")
}

/// Samples winning strategies of the pulled-back game and checks that each maps
/// to a winning strategy of `G(a; target)`. The first sample is always the
/// solver's lexicographic witness.
pub fn check_liftstrat(
    c: &Covering,
    a: &LeafSet,
    samples: usize,
    seed: u64,
) -> Result<LiftStratReport> {
    let (src, tgt) = (c.source(), c.target());
    let pulled = pullback(c, a);
    let labels = backward_induction(src, |x| {
        evaluate_play(src, x, &pulled).expect("pullback lives on the source")
    });
    let winner = labels[src.root().index()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sample in 0..samples.max(1) {
        let strategy = if sample == 0 {
            Strategy::from_fn(src, winner, |n| {
                let cs = src.children(n);
                cs.iter()
                    .copied()
                    .find(|c| labels[c.index()] == winner)
                    .unwrap_or(cs[0])
            })?
        } else {
            random_winning_strategy(src, &labels, winner, &mut rng)
        };
        let mapped = c.map_strategy(&strategy)?;
        if let Some(play) = losing_play(tgt, a, &mapped) {
            return Ok(LiftStratReport {
                checked: sample + 1,
                winner,
                counterexample: Some(LiftStratCounterexample {
                    sample,
                    strategy,
                    play,
                }),
            });
        }
    }
    Ok(LiftStratReport {
        checked: samples.max(1),
        winner,
        counterexample: None,
    })
}

/// Solves `G(a; target)` through the covering, given a certificate depth `d` at
/// which the pulled-back payoff is decided.
pub fn solve_via_covering(c: &Covering, a: &LeafSet, d: usize) -> Result<Solution> {
    let (src, tgt) = (c.source(), c.target());
    let pulled = pullback(c, a);
    if !is_d_decided(src, &pulled, d) {
        return Err(Error::NotUnraveled(d));
    }
    let source_solution = crate::solver::solve(src, &pulled);
    let strategy = c.map_strategy(&source_solution.strategy)?;
    if let Some(x) = losing_play(tgt, a, &strategy) {
        return Err(Error::Invariant(format!(
            "transferred strategy for {} loses play {}",
            source_solution.winner,
            tgt.position(x)
        )));
    }
    Ok(Solution {
        winner: source_solution.winner,
        strategy,
    })
}
