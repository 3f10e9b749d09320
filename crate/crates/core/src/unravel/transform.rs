use std::sync::Arc;

use super::base::{BaseData, NodeKind};
use crate::covering::StrategyTransform;
use crate::error::{Error, Result};
use crate::strategy::Strategy;
use crate::tree::{NodeId, Player};

/// Strategy map of a base covering.
///
/// The target strategy is read off by walking the target tree while tracking
/// the source position the owner is imagining. The tracked source play is also
/// the lift of every target play reaching that node.
pub(crate) struct BaseTransform {
    data: Arc<BaseData>,
}

impl BaseTransform {
    pub(crate) fn new(data: Arc<BaseData>) -> Self {
        BaseTransform { data }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    /// Following the source strategy from this source node.
    Shadow(NodeId),
    /// Past a Z member where the owner gave up; remembers the truncated node.
    Conceded(NodeId),
    /// The owner's own move left the mapped strategy.
    Off,
}

struct Walker<'a> {
    data: &'a BaseData,
    strategy: &'a Strategy,
    /// II only: per entry, the Z members never challenged under any claim.
    never_challenged: Vec<u64>,
    /// II only: per entry and member, the least claim under which that member is challenged.
    rebase: Vec<Vec<Option<usize>>>,
}

impl<'a> Walker<'a> {
    fn new(data: &'a BaseData, strategy: &'a Strategy) -> Result<Self> {
        let mut never_challenged = Vec::new();
        let mut rebase = Vec::new();
        if strategy.owner() == Player::II {
            for entry in &data.entries {
                let n = entry.zset.len();
                let mut first: Vec<Option<usize>> = vec![None; n];
                for &c in &entry.claims {
                    let node = data.claims[c].node;
                    if data.source.is_terminal(node) {
                        continue;
                    }
                    let reply = strategy
                        .choice(node)
                        .ok_or_else(|| Error::StrategyMismatch("no reply at a claim".into()))?;
                    if let NodeKind::Challenge { member, .. } = data.kind[reply.index()] {
                        first[member].get_or_insert(c);
                    }
                }
                let mask = (0..n)
                    .filter(|&i| first[i].is_none())
                    .fold(0u64, |m, i| m | 1 << i);
                never_challenged.push(mask);
                rebase.push(first);
            }
        }
        Ok(Walker {
            data,
            strategy,
            never_challenged,
            rebase,
        })
    }

    fn owner(&self) -> Player {
        self.strategy.owner()
    }

    /// The owner's move at target node `t`, or `None` when the opponent moves.
    fn prescribed(&self, t: NodeId, state: State) -> Result<Option<NodeId>> {
        let d = self.data;
        let tgt = &d.target;
        if tgt.is_terminal(t) || tgt.mover(t) != self.owner() {
            return Ok(None);
        }
        let s = match state {
            State::Shadow(s) => s,
            State::Conceded(_) | State::Off => return Ok(Some(tgt.children(t)[0])),
        };
        let choice = self.strategy.choice(s).ok_or_else(|| {
            Error::Invariant(format!(
                "no source move at {} while shadowing {}",
                d.source.position(s),
                tgt.position(t)
            ))
        })?;
        if let NodeKind::Claim(_) = d.kind[s.index()] {
            if let NodeKind::Challenge { .. } = d.kind[choice.index()] {
                return Err(Error::Invariant(
                    "II's reply to the never-challenged claim is a challenge".into(),
                ));
            }
        }
        Ok(Some(d.image[choice.index()]))
    }

    /// State at target child `child` of `t`.
    fn step(&self, state: State, prescribed: Option<NodeId>, child: NodeId) -> Result<State> {
        if prescribed.is_some_and(|p| p != child) {
            return Ok(State::Off);
        }
        let d = self.data;
        let (src, tgt) = (&d.source, &d.target);
        let s = match state {
            State::Shadow(s) => s,
            other => return Ok(other),
        };
        let label = tgt.label(child);
        let missing = || {
            Error::Invariant(format!(
                "source has no counterpart of {} below {}",
                tgt.position(child),
                src.position(s)
            ))
        };
        let depth = src.depth(s);
        if depth < d.level {
            return src.child(s, label).map(State::Shadow).ok_or_else(missing);
        }
        if depth == d.level {
            let entry = *d.entry_of.get(&child).ok_or_else(missing)?;
            let claim = match self.owner() {
                Player::I => self.strategy.choice(s).ok_or_else(missing)?,
                Player::II => {
                    let e = &d.entries[entry];
                    d.claims[e.claims[self.never_challenged[entry] as usize]].node
                }
            };
            return Ok(State::Shadow(claim));
        }
        let next = match d.kind[s.index()] {
            NodeKind::Claim(c) => d.claims[c].accept_child(label).ok_or_else(missing)?,
            _ => src.child(s, label).ok_or_else(missing)?,
        };
        match d.kind[next.index()] {
            NodeKind::Accept {
                claim,
                stop: Some(i),
            } => self.at_stop(claim, i, next),
            _ => Ok(State::Shadow(next)),
        }
    }

    /// Play reached Z member `i` while the owner assumed II accepted `claim`.
    fn at_stop(&self, claim: usize, i: usize, stop: NodeId) -> Result<State> {
        let d = self.data;
        let c = &d.claims[claim];
        let claimed = c.mask >> i & 1 == 1;
        let switch = |c: usize| {
            d.claims[c].challenged[i]
                .map(State::Shadow)
                .ok_or_else(|| Error::Invariant("challenge branch missing".into()))
        };
        match (self.owner(), claimed) {
            (Player::I, true) => switch(claim),
            (Player::I, false) | (Player::II, true) => Ok(State::Conceded(stop)),
            (Player::II, false) => {
                let target = self.rebase[c.entry][i].ok_or_else(|| {
                    Error::Invariant("unclaimed Z member is never challenged".into())
                })?;
                switch(target)
            }
        }
    }

    /// States and prescribed moves for every target node.
    fn walk_all(&self) -> Result<(Vec<State>, Vec<Option<NodeId>>)> {
        let tgt = &self.data.target;
        let mut states = vec![State::Off; tgt.len()];
        let mut moves = vec![None; tgt.len()];
        states[tgt.root().index()] = State::Shadow(self.data.source.root());
        for t in tgt.node_ids() {
            let state = states[t.index()];
            let m = self.prescribed(t, state)?;
            moves[t.index()] = m;
            for &c in tgt.children(t) {
                states[c.index()] = self.step(state, m, c)?;
            }
        }
        Ok((states, moves))
    }

    fn walk_to(&self, play: NodeId) -> Result<State> {
        let tgt = &self.data.target;
        let mut state = State::Shadow(self.data.source.root());
        let path = tgt.path(play);
        for w in path.windows(2) {
            let m = self.prescribed(w[0], state)?;
            state = self.step(state, m, w[1])?;
        }
        Ok(state)
    }

    fn lifted(&self, play: NodeId, state: State) -> Result<NodeId> {
        match state {
            State::Shadow(s) | State::Conceded(s) => Ok(s),
            State::Off => Err(Error::Precondition(format!(
                "play {} is not consistent with the mapped strategy",
                self.data.target.position(play)
            ))),
        }
    }
}

impl StrategyTransform for BaseTransform {
    fn apply(&self, strategy: &Strategy) -> Result<Strategy> {
        strategy.fits(&self.data.source)?;
        let walker = Walker::new(&self.data, strategy)?;
        let (_, moves) = walker.walk_all()?;
        Ok(Strategy::from_choices(strategy.owner(), moves))
    }

    fn lift(&self, strategy: &Strategy, play: NodeId) -> Result<NodeId> {
        let walker = Walker::new(&self.data, strategy)?;
        let state = walker.walk_to(play)?;
        walker.lifted(play, state)
    }

    fn lift_many(&self, strategy: &Strategy, plays: &[NodeId]) -> Result<Vec<NodeId>> {
        let walker = Walker::new(&self.data, strategy)?;
        let (states, _) = walker.walk_all()?;
        plays
            .iter()
            .map(|&x| walker.lifted(x, states[x.index()]))
            .collect()
    }
}
