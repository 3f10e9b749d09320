use std::collections::HashMap;
use std::sync::Arc;

use super::transform::BaseTransform;
use super::zset::{z_members, ZSet};
use super::{round_up_even, Caps, Z_CEILING};
use crate::covering::Covering;
use crate::error::{Error, Result};
use crate::payoff::{meets_table, realize_closed, ClosedSpec, LeafSet};
use crate::tree::{GameTree, MoveLabel, NodeId, Player, Position, TreeBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum NodeKind {
    /// Levels `0..=k`, identical to the target.
    Copy,
    Claim(usize),
    /// Inside an accept branch; `stop` is the index of the Z member this node
    /// truncates at, if any.
    Accept {
        claim: usize,
        stop: Option<usize>,
    },
    Challenge {
        claim: usize,
        member: usize,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Entry {
    pub(crate) zset: ZSet,
    /// Claim indices by subset mask.
    pub(crate) claims: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct Claim {
    pub(crate) node: NodeId,
    pub(crate) entry: usize,
    pub(crate) mask: u64,
    /// Accept children keyed by II's move in the target.
    pub(crate) accept: Vec<(MoveLabel, NodeId)>,
    /// Per Z member: the node standing for that member inside its challenge branch.
    pub(crate) challenged: Vec<Option<NodeId>>,
}

impl Claim {
    pub(crate) fn accept_child(&self, label: MoveLabel) -> Option<NodeId> {
        self.accept
            .iter()
            .find(|(b, _)| *b == label)
            .map(|&(_, n)| n)
    }
}

#[derive(Debug)]
pub(crate) struct BaseData {
    pub(crate) level: usize,
    pub(crate) source: Arc<GameTree>,
    pub(crate) target: Arc<GameTree>,
    pub(crate) payoff: LeafSet,
    pub(crate) image: Vec<NodeId>,
    pub(crate) kind: Vec<NodeKind>,
    pub(crate) entries: Vec<Entry>,
    pub(crate) claims: Vec<Claim>,
    /// Target node `p⌢a` at depth `k + 1` to its entry.
    pub(crate) entry_of: HashMap<NodeId, usize>,
}

/// Per-node decoration of the constructed tree, for reports and exports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoration {
    Plain,
    /// I's move `(a, X)`.
    Claim {
        label: MoveLabel,
        claimed: Vec<Position>,
    },
    /// II accepts and plays `b`.
    Accept {
        label: MoveLabel,
    },
    /// II challenges `challenged` and plays `b`.
    Challenge {
        challenged: Position,
        label: MoveLabel,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    Accept,
    Challenge(Position),
}

/// The covering built for one closed set, together with its construction data.
#[derive(Clone)]
pub struct BaseCovering {
    data: Arc<BaseData>,
    covering: Covering,
}

impl std::fmt::Debug for BaseCovering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BaseCovering")
            .field("level", &self.data.level)
            .field("source_nodes", &self.data.source.len())
            .field("zsets", &self.data.entries.len())
            .finish()
    }
}

impl BaseCovering {
    pub fn covering(&self) -> &Covering {
        &self.covering
    }

    pub fn into_covering(self) -> Covering {
        self.covering
    }

    pub fn level(&self) -> usize {
        self.data.level
    }

    pub fn source(&self) -> &Arc<GameTree> {
        &self.data.source
    }

    pub fn target(&self) -> &Arc<GameTree> {
        &self.data.target
    }

    /// The closed payoff realized on the target.
    pub fn payoff(&self) -> &LeafSet {
        &self.data.payoff
    }

    pub fn zsets(&self) -> impl Iterator<Item = &ZSet> + '_ {
        self.data.entries.iter().map(|e| &e.zset)
    }

    pub fn zset_for(&self, p: &Position, a: MoveLabel) -> Option<&ZSet> {
        let t = &self.data.target;
        let pa = t.find(&p.child(a))?;
        self.data
            .entry_of
            .get(&pa)
            .map(|&e| &self.data.entries[e].zset)
    }

    pub fn decoration(&self, node: NodeId) -> Decoration {
        let d = &self.data;
        let t = &d.target;
        match d.kind[node.index()] {
            NodeKind::Claim(c) => {
                let claim = &d.claims[c];
                let zset = &d.entries[claim.entry].zset;
                Decoration::Claim {
                    label: t.label(d.image[node.index()]),
                    claimed: zset
                        .subset(claim.mask)
                        .into_iter()
                        .map(|m| t.position(m))
                        .collect(),
                }
            }
            NodeKind::Accept { .. } if d.source.depth(node) == d.level + 2 => Decoration::Accept {
                label: t.label(d.image[node.index()]),
            },
            NodeKind::Challenge { claim, member } if d.source.depth(node) == d.level + 2 => {
                let zset = &d.entries[d.claims[claim].entry].zset;
                Decoration::Challenge {
                    challenged: t.position(zset.members[member]),
                    label: t.label(d.image[node.index()]),
                }
            }
            _ => Decoration::Plain,
        }
    }

    /// Which of II's replies a node lies under; `None` above level `k + 2`.
    pub fn branch(&self, node: NodeId) -> Option<Branch> {
        let d = &self.data;
        match d.kind[node.index()] {
            NodeKind::Accept { .. } => Some(Branch::Accept),
            NodeKind::Challenge { claim, member } => {
                let zset = &d.entries[d.claims[claim].entry].zset;
                Some(Branch::Challenge(d.target.position(zset.members[member])))
            }
            _ => None,
        }
    }

    /// Full-depth source leaves where II accepted.
    pub fn accept_leaves(&self) -> LeafSet {
        let src = &self.data.source;
        LeafSet::from_nodes(
            src,
            src.leaves()
                .into_iter()
                .filter(|&l| matches!(self.branch(l), Some(Branch::Accept))),
        )
        .expect("leaves are full depth")
    }

    /// Number of claim nodes `(a, X)` directly under a level-`k` position.
    pub fn claim_count(&self, p: &Position) -> Option<usize> {
        let n = self.data.source.find(p)?;
        if self.data.source.depth(n) != self.data.level {
            return None;
        }
        Some(self.data.source.children(n).len())
    }
}

struct Builder<'a> {
    target: &'a GameTree,
    tree: TreeBuilder,
    image: Vec<NodeId>,
    kind: Vec<NodeKind>,
    node_max: usize,
}

impl Builder<'_> {
    fn add(
        &mut self,
        parent: NodeId,
        label: MoveLabel,
        img: NodeId,
        kind: NodeKind,
    ) -> Result<NodeId> {
        if self.tree.len() >= self.node_max {
            return Err(Error::ResourceLimit {
                what: "covering source nodes",
                limit: self.node_max,
            });
        }
        let id = self.tree.add_child(parent, label)?;
        self.image.push(img);
        self.kind.push(kind);
        Ok(id)
    }

    /// Copies the target subtree at `img` below `parent`. Inside an accept
    /// branch, Z members become terminal: taboo for II when claimed, for I otherwise.
    fn mirror(
        &mut self,
        parent: NodeId,
        label: MoveLabel,
        img: NodeId,
        kind: NodeKind,
        stops: Option<(&HashMap<NodeId, usize>, u64)>,
    ) -> Result<NodeId> {
        let mut first = None;
        let mut stack = vec![(parent, label, img)];
        while let Some((parent, label, img)) = stack.pop() {
            let stop = stops.and_then(|(s, _)| s.get(&img).copied());
            let kind = match kind {
                NodeKind::Accept { claim, .. } => NodeKind::Accept { claim, stop },
                other => other,
            };
            let id = self.add(parent, label, img, kind)?;
            first.get_or_insert(id);
            if let (Some(i), Some((_, mask))) = (stop, stops) {
                let owner = if mask >> i & 1 == 1 {
                    Player::II
                } else {
                    Player::I
                };
                self.tree.set_taboo(id, owner);
                continue;
            }
            if let Some(p) = self.target.taboo(img) {
                self.tree.set_taboo(id, p);
            }
            for &c in self.target.children(img).iter().rev() {
                stack.push((id, self.target.label(c), c));
            }
        }
        Ok(first.expect("at least one node"))
    }
}

/// Builds the covering of `tree` that unravels the closed set `spec` at level `k`.
///
/// Odd `k` is rounded up. Requires `k + 2 ≤ D`, and `k + 2 < D` when the spec
/// has generators; with `k + 2 = D` no Z set could catch a generator.
pub fn build_base_covering(
    tree: Arc<GameTree>,
    spec: &ClosedSpec,
    k: usize,
    caps: &Caps,
) -> Result<BaseCovering> {
    let k = round_up_even(k);
    let depth = tree.depth_bound();
    if k + 2 > depth {
        return Err(Error::Precondition(format!(
            "level {k} leaves no room for two more moves below depth {depth}"
        )));
    }
    if !spec.generators.is_empty() && k + 2 >= depth {
        return Err(Error::Precondition(format!(
            "generators need level {k} + 2 to stay below the depth bound {depth}"
        )));
    }
    let payoff = realize_closed(&tree, spec)?;
    let meets = meets_table(&tree, &payoff);
    let z_cap = caps.z_max.min(Z_CEILING);

    let t: &GameTree = &tree;
    let mut b = Builder {
        target: t,
        tree: TreeBuilder::new(depth),
        image: vec![t.root()],
        kind: vec![NodeKind::Copy],
        node_max: caps.node_max.max(1),
    };
    let mut entries: Vec<Entry> = Vec::new();
    let mut claims: Vec<Claim> = Vec::new();
    let mut entry_of = HashMap::new();

    // Levels 0..=k, in preorder so each parent exists before its children.
    let mut copy_of: HashMap<NodeId, NodeId> = HashMap::new();
    copy_of.insert(t.root(), NodeId::ROOT);
    if let Some(p) = t.taboo(t.root()) {
        b.tree.set_taboo(NodeId::ROOT, p);
    }
    let mut frontier = Vec::new();
    for n in t.descendants(t.root()) {
        let depth_n = t.depth(n);
        if depth_n > k {
            continue;
        }
        if n != t.root() {
            let parent = copy_of[&t.parent(n).unwrap()];
            let id = b.add(parent, t.label(n), n, NodeKind::Copy)?;
            if let Some(p) = t.taboo(n) {
                b.tree.set_taboo(id, p);
            }
            copy_of.insert(n, id);
        }
        if depth_n == k && !t.is_terminal(n) {
            frontier.push(n);
        }
    }

    for p in frontier {
        let p_src = copy_of[&p];
        let mut next_label: MoveLabel = 0;
        for &pa in t.children(p) {
            let members = if t.is_terminal(pa) {
                Vec::new()
            } else {
                z_members(t, &meets, pa)
            };
            if members.len() > z_cap {
                return Err(Error::ResourceLimit {
                    what: "|Z|",
                    limit: z_cap,
                });
            }
            let entry = entries.len();
            entry_of.insert(pa, entry);
            let stops: HashMap<NodeId, usize> =
                members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let mut claim_ids = Vec::new();
            for mask in 0..1u64 << members.len() {
                let c = claims.len();
                let node = b.add(p_src, next_label, pa, NodeKind::Claim(c))?;
                next_label += 1;
                claim_ids.push(c);
                let mut claim = Claim {
                    node,
                    entry,
                    mask,
                    accept: Vec::new(),
                    challenged: vec![None; members.len()],
                };
                if let Some(owner) = t.taboo(pa) {
                    b.tree.set_taboo(node, owner);
                    claims.push(claim);
                    continue;
                }
                let mut reply: MoveLabel = 0;
                for &pab in t.children(pa) {
                    let kind = NodeKind::Accept {
                        claim: c,
                        stop: None,
                    };
                    let id = b.mirror(node, reply, pab, kind, Some((&stops, mask)))?;
                    claim.accept.push((t.label(pab), id));
                    reply += 1;
                }
                for (i, &r) in members.iter().enumerate() {
                    if mask >> i & 1 == 0 {
                        continue;
                    }
                    let kind = NodeKind::Challenge {
                        claim: c,
                        member: i,
                    };
                    let mut parent = node;
                    let mut label = reply;
                    reply += 1;
                    for d in k + 2..t.depth(r) {
                        let along = t.ancestor_at(r, d);
                        if t.is_terminal(along) {
                            return Err(Error::Invariant(format!(
                                "terminal position {} strictly below a Z member",
                                t.position(along)
                            )));
                        }
                        parent = b.add(parent, label, along, kind)?;
                        label = t.label(t.ancestor_at(r, d + 1));
                    }
                    claim.challenged[i] = Some(b.mirror(parent, label, r, kind, None)?);
                }
                claims.push(claim);
            }
            entries.push(Entry {
                zset: ZSet {
                    parent: p,
                    label: t.label(pa),
                    members,
                },
                claims: claim_ids,
            });
        }
    }

    let Builder {
        tree: tb,
        image,
        kind,
        ..
    } = b;
    let source = Arc::new(tb.finish()?);
    let data = Arc::new(BaseData {
        level: k,
        source: source.clone(),
        target: tree.clone(),
        payoff,
        image,
        kind,
        entries,
        claims,
        entry_of,
    });
    let covering = Covering::new(
        source,
        tree,
        k,
        data.image.clone(),
        Arc::new(BaseTransform::new(data.clone())),
    )?;
    Ok(BaseCovering { data, covering })
}
