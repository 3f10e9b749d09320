//! Finite game trees with taboos.
//!
//! A [`GameTree`] is an arena of positions closed under prefixes, with a depth
//! bound `D`. Leaves at depth `D` stand for the infinite plays of the game; every
//! terminal position above depth `D` carries a taboo tag naming the player who
//! loses when play ends there.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A move symbol. Sibling moves are ordered by label.
pub type MoveLabel = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    I,
    II,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::I => Player::II,
            Player::II => Player::I,
        }
    }

    /// The player to move at a position of the given length.
    pub fn to_move_at(depth: usize) -> Player {
        if depth.is_multiple_of(2) {
            Player::I
        } else {
            Player::II
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::I => 0,
            Player::II => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::I => f.write_str("I"),
            Player::II => f.write_str("II"),
        }
    }
}

impl FromStr for Player {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "I" => Ok(Player::I),
            "II" => Ok(Player::II),
            _ => Err(()),
        }
    }
}

/// How a play ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlayOutcome {
    /// Reaches the depth bound; models an infinite play.
    Infinite,
    /// Early terminal that player I loses.
    TabooI,
    /// Early terminal that player II loses.
    TabooII,
}

impl PlayOutcome {
    pub fn taboo_for(player: Player) -> PlayOutcome {
        match player {
            Player::I => PlayOutcome::TabooI,
            Player::II => PlayOutcome::TabooII,
        }
    }
}

/// A finite sequence of moves. The empty sequence is the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Position(pub Vec<MoveLabel>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[MoveLabel] {
        &self.0
    }

    pub fn child(&self, label: MoveLabel) -> Position {
        let mut moves = self.0.clone();
        moves.push(label);
        Position(moves)
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn truncate(&self, len: usize) -> Position {
        Position(self.0[..len.min(self.0.len())].to_vec())
    }
}

impl From<Vec<MoveLabel>> for Position {
    fn from(moves: Vec<MoveLabel>) -> Self {
        Position(moves)
    }
}

impl From<&[MoveLabel]> for Position {
    fn from(moves: &[MoveLabel]) -> Self {
        Position(moves.to_vec())
    }
}

/// Slash path, `.` for the root.
impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Position {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "." {
            return Ok(Position::root());
        }
        s.split('/')
            .map(|part| {
                if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(format!("bad move label {part:?}"));
                }
                part.parse::<MoveLabel>()
                    .map_err(|_| format!("move label {part:?} out of range"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Position)
    }
}

/// Index of a node in a [`GameTree`] arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    parent: Option<NodeId>,
    label: MoveLabel,
    depth: usize,
    children: Vec<NodeId>,
    taboo: Option<Player>,
}

/// Immutable finite game tree with taboos.
///
/// Node ids are assigned so that every parent precedes its children, which lets
/// bottom-up passes simply walk the arena in reverse. Equality is structural:
/// two trees are equal when they have the same positions and taboo tags,
/// whatever their arena order.
#[derive(Debug, Clone)]
pub struct GameTree {
    depth_bound: usize,
    nodes: Vec<Node>,
}

impl PartialEq for GameTree {
    fn eq(&self, other: &Self) -> bool {
        if self.depth_bound != other.depth_bound || self.len() != other.len() {
            return false;
        }
        let key = |t: &GameTree, n: NodeId| (t.depth(n), t.label(n), t.taboo(n));
        self.descendants(NodeId::ROOT)
            .into_iter()
            .zip(other.descendants(NodeId::ROOT))
            .all(|(a, b)| key(self, a) == key(other, b))
    }
}

impl Eq for GameTree {}

impl GameTree {
    /// Builds a tree from explicit positions. The root is implicit; taboo tags
    /// name the player who loses at that early terminal.
    pub fn from_positions<I>(depth_bound: usize, positions: I) -> Result<GameTree>
    where
        I: IntoIterator<Item = (Position, Option<Player>)>,
    {
        let mut entries: Vec<(Position, Option<Player>)> = positions.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut builder = TreeBuilder::new(depth_bound);
        let mut ids: std::collections::HashMap<Position, NodeId> = Default::default();
        ids.insert(Position::root(), NodeId::ROOT);
        for (pos, taboo) in entries {
            let id = if pos.is_empty() {
                NodeId::ROOT
            } else {
                if ids.contains_key(&pos) {
                    return Err(Error::InvalidTree(format!("duplicate position {pos}")));
                }
                let parent_pos = pos.truncate(pos.len() - 1);
                let parent = *ids.get(&parent_pos).ok_or_else(|| {
                    Error::InvalidTree(format!("prefix {parent_pos} of {pos} is missing"))
                })?;
                let id = builder.add_child(parent, *pos.0.last().unwrap())?;
                ids.insert(pos, id);
                id
            };
            if let Some(p) = taboo {
                builder.set_taboo(id, p);
            }
        }
        builder.finish()
    }

    /// Complete tree with uniform branching down to the depth bound.
    pub fn complete(depth_bound: usize, branching: u32) -> Result<GameTree> {
        let mut builder = TreeBuilder::new(depth_bound);
        let mut frontier = vec![NodeId::ROOT];
        for _ in 0..depth_bound {
            let mut next = Vec::new();
            for &node in &frontier {
                for label in 0..branching {
                    next.push(builder.add_child(node, label)?);
                }
            }
            frontier = next;
        }
        builder.finish()
    }

    pub fn depth_bound(&self) -> usize {
        self.depth_bound
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> NodeId {
        NodeId::ROOT
    }

    pub fn node_ids(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.index() < self.nodes.len()
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id.index()].parent
    }

    pub fn label(&self, id: NodeId) -> MoveLabel {
        self.nodes[id.index()].label
    }

    pub fn depth(&self, id: NodeId) -> usize {
        self.nodes[id.index()].depth
    }

    /// Children in increasing label order.
    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id.index()].children
    }

    pub fn is_terminal(&self, id: NodeId) -> bool {
        self.nodes[id.index()].children.is_empty()
    }

    /// The player for whom this node is taboo, if it is an early terminal.
    pub fn taboo(&self, id: NodeId) -> Option<Player> {
        self.nodes[id.index()].taboo
    }

    pub fn mover(&self, id: NodeId) -> Player {
        Player::to_move_at(self.depth(id))
    }

    pub fn child(&self, id: NodeId, label: MoveLabel) -> Option<NodeId> {
        let children = &self.nodes[id.index()].children;
        children
            .binary_search_by_key(&label, |c| self.label(*c))
            .ok()
            .map(|i| children[i])
    }

    pub fn find(&self, pos: &Position) -> Option<NodeId> {
        pos.0
            .iter()
            .try_fold(NodeId::ROOT, |node, &label| self.child(node, label))
    }

    pub fn lookup(&self, pos: &Position) -> Result<NodeId> {
        self.find(pos)
            .ok_or_else(|| Error::UnknownPosition(pos.clone()))
    }

    pub fn position(&self, id: NodeId) -> Position {
        let mut moves = Vec::with_capacity(self.depth(id));
        let mut cur = id;
        while let Some(parent) = self.parent(cur) {
            moves.push(self.label(cur));
            cur = parent;
        }
        moves.reverse();
        Position(moves)
    }

    /// The prefix of `id` at the given depth (`id` itself when `depth` is not smaller).
    pub fn ancestor_at(&self, id: NodeId, depth: usize) -> NodeId {
        let mut cur = id;
        while self.depth(cur) > depth {
            cur = self.parent(cur).expect("non-root node has a parent");
        }
        cur
    }

    /// Whether `a` is a (not necessarily proper) prefix of `b`.
    pub fn is_prefix(&self, a: NodeId, b: NodeId) -> bool {
        self.depth(a) <= self.depth(b) && self.ancestor_at(b, self.depth(a)) == a
    }

    /// Nodes on the path from the root to `id`, inclusive.
    pub fn path(&self, id: NodeId) -> Vec<NodeId> {
        let mut path = Vec::with_capacity(self.depth(id) + 1);
        let mut cur = Some(id);
        while let Some(node) = cur {
            path.push(node);
            cur = self.parent(node);
        }
        path.reverse();
        path
    }

    /// Nodes of the subtree rooted at `id` in preorder (lexicographic order).
    pub fn descendants(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(node) = stack.pop() {
            out.push(node);
            stack.extend(self.children(node).iter().rev());
        }
        out
    }

    /// All terminal positions in lexicographic order.
    pub fn plays(&self) -> Vec<NodeId> {
        self.descendants(NodeId::ROOT)
            .into_iter()
            .filter(|&n| self.is_terminal(n))
            .collect()
    }

    /// Depth-`D` leaves (the modeled infinite plays) in lexicographic order.
    pub fn leaves(&self) -> Vec<NodeId> {
        self.descendants(NodeId::ROOT)
            .into_iter()
            .filter(|&n| self.depth(n) == self.depth_bound)
            .collect()
    }

    pub fn is_pruned(&self) -> bool {
        self.node_ids()
            .all(|n| !self.is_terminal(n) || self.depth(n) == self.depth_bound)
    }

    pub fn classify_play(&self, id: NodeId) -> Result<PlayOutcome> {
        if !self.is_terminal(id) {
            return Err(Error::NotAPlay(self.position(id)));
        }
        if self.depth(id) == self.depth_bound {
            return Ok(PlayOutcome::Infinite);
        }
        match self.taboo(id) {
            Some(p) => Ok(PlayOutcome::taboo_for(p)),
            None => Err(Error::Invariant(format!(
                "early terminal {} has no taboo tag",
                self.position(id)
            ))),
        }
    }

    /// The game subtree at `p`: every position comparable with `p`.
    pub fn subtree_at(&self, p: &Position) -> Result<GameTree> {
        let target = self.lookup(p)?;
        let mut builder = TreeBuilder::new(self.depth_bound);
        let path = self.path(target);
        let mut cur = NodeId::ROOT;
        for &node in &path[1..] {
            cur = builder.add_child(cur, self.label(node))?;
        }
        let mut stack = vec![(target, cur)];
        while let Some((orig, copy)) = stack.pop() {
            if let Some(t) = self.taboo(orig) {
                builder.set_taboo(copy, t);
            }
            for &c in self.children(orig) {
                let nc = builder.add_child(copy, self.label(c))?;
                stack.push((c, nc));
            }
        }
        builder.finish()
    }
}

/// Incremental construction of a [`GameTree`]; all invariants are checked in
/// [`TreeBuilder::finish`].
#[derive(Debug, Clone)]
pub struct TreeBuilder {
    depth_bound: usize,
    nodes: Vec<Node>,
}

impl TreeBuilder {
    pub fn new(depth_bound: usize) -> Self {
        TreeBuilder {
            depth_bound,
            nodes: vec![Node {
                parent: None,
                label: 0,
                depth: 0,
                children: Vec::new(),
                taboo: None,
            }],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn add_child(&mut self, parent: NodeId, label: MoveLabel) -> Result<NodeId> {
        let depth = self.nodes[parent.index()].depth + 1;
        if depth > self.depth_bound {
            return Err(Error::InvalidTree(format!(
                "node deeper than the depth bound {}",
                self.depth_bound
            )));
        }
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Node {
            parent: Some(parent),
            label,
            depth,
            children: Vec::new(),
            taboo: None,
        });
        self.nodes[parent.index()].children.push(id);
        Ok(id)
    }

    pub fn set_taboo(&mut self, id: NodeId, player: Player) {
        self.nodes[id.index()].taboo = Some(player);
    }

    pub fn finish(mut self) -> Result<GameTree> {
        let d = self.depth_bound;
        if d < 2 || !d.is_multiple_of(2) {
            return Err(Error::InvalidTree(format!(
                "depth bound must be even and at least 2, got {d}"
            )));
        }
        let labels: Vec<MoveLabel> = self.nodes.iter().map(|n| n.label).collect();
        for node in &mut self.nodes {
            node.children.sort_by_key(|c| labels[c.index()]);
            if node
                .children
                .windows(2)
                .any(|w| labels[w[0].index()] == labels[w[1].index()])
            {
                return Err(Error::InvalidTree(
                    "sibling move labels must be distinct".into(),
                ));
            }
        }
        let tree = GameTree {
            depth_bound: d,
            nodes: self.nodes,
        };
        for id in tree.node_ids() {
            let terminal = tree.is_terminal(id);
            let depth = tree.depth(id);
            match (terminal, depth == d, tree.taboo(id)) {
                (_, true, Some(_)) => {
                    return Err(Error::InvalidTree(format!(
                        "taboo at full depth: {}",
                        tree.position(id)
                    )))
                }
                (false, _, Some(_)) => {
                    return Err(Error::InvalidTree(format!(
                        "taboo on non-terminal position {}",
                        tree.position(id)
                    )))
                }
                (true, false, None) => {
                    return Err(Error::InvalidTree(format!(
                        "early terminal {} has no taboo tag",
                        tree.position(id)
                    )))
                }
                _ => {}
            }
        }
        Ok(tree)
    }
}
