//! The line-oriented game description format.
//!
//! ```text
//! GAME
//! version 1
//! alphabet 2
//! depth 2
//! NODES
//! 0
//! 0/0
//! 0/1
//! 1
//! TABOOS
//! 1 II
//! PAYOFF
//! open 0
//! ```
//!
//! Sections appear in the order shown; `TABOOS` may be omitted. The root is
//! implicit and written `.` where needed. The payoff line is `closed`, `open`,
//! or `union` followed by one `closed` line per member. `#` starts a comment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::payoff::{ClosedSpec, PayoffSpec};
use crate::tree::{GameTree, MoveLabel, Player, Position};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameDocument {
    pub version: u32,
    pub alphabet: u32,
    pub tree: GameTree,
    pub payoff: PayoffSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Semantic,
}

/// A parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Semantic => "invalid game",
        };
        write!(f, "{}:{}: {kind}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Game,
    Nodes,
    Taboos,
    Payoff,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind: ParseErrorKind::Syntax,
            message: message.into(),
        }
    }

    fn semantic(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind: ParseErrorKind::Semantic,
            message: message.into(),
        }
    }

    fn number<T: std::str::FromStr>(&self, what: &str) -> Parsed<T> {
        if self.text.is_empty() || !self.text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.syntax(format!(
                "expected a number for {what}, found {:?}",
                self.text
            )));
        }
        self.text
            .parse()
            .map_err(|_| self.syntax(format!("{what} {} is out of range", self.text)))
    }

    fn position(&self) -> Parsed<Position> {
        self.text.parse().map_err(|e: String| self.syntax(e))
    }
}

/// Whitespace-separated tokens of one line, comments stripped.
fn tokens(line: &str, number: usize) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    line: number,
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

/// Location of the first invalid UTF-8 byte.
fn utf8_error(bytes: &[u8], valid_up_to: usize) -> ParseError {
    let good = std::str::from_utf8(&bytes[..valid_up_to]).expect("valid prefix");
    let line = good.matches('\n').count() + 1;
    let column = good.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Syntax,
        message: "invalid UTF-8".into(),
    }
}

pub fn parse_game_bytes(bytes: &[u8]) -> Parsed<GameDocument> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_game(text),
        Err(e) => Err(utf8_error(bytes, e.valid_up_to())),
    }
}

#[derive(Default)]
struct Header<'a> {
    version: Option<(u32, Token<'a>)>,
    alphabet: Option<(u32, Token<'a>)>,
    depth: Option<(usize, Token<'a>)>,
}

pub fn parse_game(text: &str) -> Parsed<GameDocument> {
    let mut section: Option<Section> = None;
    let mut header = Header::default();
    let mut nodes: BTreeMap<Position, Token> = BTreeMap::new();
    let mut taboos: BTreeMap<Position, (Player, Token)> = BTreeMap::new();
    let mut payoff: Option<(PayoffSpec, Token)> = None;
    let mut union_open = false;
    let mut generator_tokens: Vec<(Position, Token)> = Vec::new();
    let mut last_line = 1;

    for (i, raw) in text.split('\n').enumerate() {
        let number = i + 1;
        last_line = number;
        let toks = tokens(raw.strip_suffix('\r').unwrap_or(raw), number);
        let Some(first) = toks.first().copied() else {
            continue;
        };
        let next = match first.text {
            "GAME" => Some(Section::Game),
            "NODES" => Some(Section::Nodes),
            "TABOOS" => Some(Section::Taboos),
            "PAYOFF" => Some(Section::Payoff),
            _ => None,
        };
        if let Some(next) = next {
            if toks.len() > 1 {
                return Err(toks[1].syntax("unexpected text after section header"));
            }
            if section.map_or(next != Section::Game, |s| next <= s) {
                return Err(first.syntax(format!("section {} is out of order", first.text)));
            }
            section = Some(next);
            continue;
        }
        let Some(current) = section else {
            return Err(first.syntax("expected GAME"));
        };
        match current {
            Section::Game => {
                if toks.len() != 2 {
                    return Err(first.syntax("expected a key and a value"));
                }
                let value = toks[1];
                match first.text {
                    "version" if header.version.is_none() => {
                        header.version = Some((value.number("version")?, value))
                    }
                    "alphabet" if header.alphabet.is_none() => {
                        header.alphabet = Some((value.number("alphabet")?, value))
                    }
                    "depth" if header.depth.is_none() => {
                        header.depth = Some((value.number("depth")?, value))
                    }
                    "version" | "alphabet" | "depth" => {
                        return Err(first.syntax(format!("{} given twice", first.text)))
                    }
                    other => return Err(first.syntax(format!("unknown key {other:?}"))),
                }
            }
            Section::Nodes => {
                if toks.len() != 1 {
                    return Err(toks[1].syntax("expected one position per line"));
                }
                let p = first.position()?;
                if p.is_empty() {
                    return Err(first.semantic("the root is implicit"));
                }
                if nodes.insert(p.clone(), first).is_some() {
                    return Err(first.semantic(format!("duplicate position {p}")));
                }
            }
            Section::Taboos => {
                if toks.len() != 2 {
                    return Err(first.syntax("expected a position and I or II"));
                }
                let p = first.position()?;
                let owner: Player = toks[1]
                    .text
                    .parse()
                    .map_err(|_| toks[1].syntax("expected I or II"))?;
                if taboos.insert(p.clone(), (owner, first)).is_some() {
                    return Err(first.semantic(format!("duplicate taboo for {p}")));
                }
            }
            Section::Payoff => {
                let mut gens = Vec::new();
                for t in &toks[1..] {
                    let g = t.position()?;
                    generator_tokens.push((g.clone(), *t));
                    gens.push(g);
                }
                let spec = ClosedSpec::new(gens);
                match (first.text, &mut payoff) {
                    ("union", None) => {
                        if toks.len() > 1 {
                            return Err(
                                toks[1].syntax("union takes its members on the following lines")
                            );
                        }
                        payoff = Some((PayoffSpec::UnionOfClosed(Vec::new()), first));
                        union_open = true;
                    }
                    ("closed", None) => payoff = Some((PayoffSpec::Closed(spec), first)),
                    ("open", None) => payoff = Some((PayoffSpec::Open(spec), first)),
                    ("closed", Some((PayoffSpec::UnionOfClosed(parts), _))) if union_open => {
                        parts.push(spec)
                    }
                    ("closed" | "open" | "union", Some(_)) => {
                        return Err(first.syntax("only one payoff may be given"))
                    }
                    (other, _) => {
                        return Err(first.syntax(format!("unknown payoff kind {other:?}")))
                    }
                }
            }
        }
    }

    let end = ParseError {
        line: last_line,
        column: 1,
        kind: ParseErrorKind::Syntax,
        message: String::new(),
    };
    let missing = |what: &str| ParseError {
        message: format!("missing {what}"),
        ..end.clone()
    };
    if section.is_none() {
        return Err(missing("GAME section"));
    }
    let (version, version_token) = header.version.ok_or_else(|| missing("version"))?;
    let (alphabet, alphabet_token) = header.alphabet.ok_or_else(|| missing("alphabet"))?;
    let (depth, depth_token) = header.depth.ok_or_else(|| missing("depth"))?;
    let (payoff, payoff_token) = payoff.ok_or_else(|| missing("PAYOFF"))?;
    if version != FORMAT_VERSION {
        return Err(version_token.semantic(format!("unsupported version {version}")));
    }
    if alphabet == 0 {
        return Err(alphabet_token.semantic("alphabet must be non-empty"));
    }
    if depth < 2 || depth % 2 != 0 {
        return Err(depth_token.semantic(format!(
            "depth bound must be even and at least 2, got {depth}"
        )));
    }
    if let PayoffSpec::UnionOfClosed(parts) = &payoff {
        if parts.is_empty() {
            return Err(payoff_token.semantic("union needs at least one closed member"));
        }
    }

    for (p, tok) in &nodes {
        if p.len() > depth {
            return Err(tok.semantic(format!(
                "position {p} is deeper than the depth bound {depth}"
            )));
        }
        if let Some(&l) = p.moves().iter().find(|&&l| l >= alphabet) {
            return Err(tok.semantic(format!("move {l} is outside the alphabet")));
        }
        let parent = p.truncate(p.len() - 1);
        if !parent.is_empty() && !nodes.contains_key(&parent) {
            return Err(tok.semantic(format!("prefix {parent} of {p} is not listed")));
        }
    }
    let has_children: BTreeSet<Position> = nodes.keys().map(|p| p.truncate(p.len() - 1)).collect();
    for (p, (_, tok)) in &taboos {
        if !p.is_empty() && !nodes.contains_key(p) {
            return Err(tok.semantic(format!("taboo for unlisted position {p}")));
        }
        if p.len() == depth {
            return Err(tok.semantic("taboo at full depth"));
        }
        if has_children.contains(p) {
            return Err(tok.semantic(format!("taboo on non-terminal position {p}")));
        }
    }
    if !has_children.contains(&Position::root()) && !taboos.contains_key(&Position::root()) {
        return Err(depth_token.semantic("the root is terminal and has no taboo tag"));
    }
    for (p, tok) in &nodes {
        if p.len() < depth && !has_children.contains(p) && !taboos.contains_key(p) {
            return Err(tok.semantic(format!("early terminal {p} has no taboo tag")));
        }
    }
    for (g, tok) in &generator_tokens {
        if g.is_empty() || g.len() >= depth {
            return Err(tok.semantic(format!("generator {g} must have depth in 1..{depth}")));
        }
        if !nodes.contains_key(g) {
            return Err(tok.semantic(format!("generator {g} is not a listed position")));
        }
        if !has_children.contains(g) {
            return Err(tok.semantic(format!("generator {g} is terminal")));
        }
    }

    let entries = nodes.keys().map(|p| (p.clone(), None)).chain(
        taboos
            .iter()
            .map(|(p, (owner, _))| (p.clone(), Some(*owner))),
    );
    let mut merged: BTreeMap<Position, Option<Player>> = BTreeMap::new();
    for (p, t) in entries {
        let slot = merged.entry(p).or_insert(None);
        if t.is_some() {
            *slot = t;
        }
    }
    let tree =
        GameTree::from_positions(depth, merged).map_err(|e| depth_token.semantic(e.to_string()))?;
    Ok(GameDocument {
        version,
        alphabet,
        tree,
        payoff,
    })
}

fn write_spec_line(out: &mut String, kind: &str, spec: &ClosedSpec) {
    out.push_str(kind);
    for g in &spec.generators {
        out.push(' ');
        out.push_str(&g.to_string());
    }
    out.push('\n');
}

/// Canonical text: positions in lexicographic order, one space between tokens,
/// no comments.
pub fn print_game(doc: &GameDocument) -> String {
    let t = &doc.tree;
    let mut out = format!(
        "GAME\nversion {}\nalphabet {}\ndepth {}\nNODES\n",
        doc.version,
        doc.alphabet,
        t.depth_bound()
    );
    let order = t.descendants(t.root());
    for &n in &order[1..] {
        out.push_str(&t.position(n).to_string());
        out.push('\n');
    }
    out.push_str("TABOOS\n");
    for &n in &order {
        if let Some(p) = t.taboo(n) {
            out.push_str(&format!("{} {p}\n", t.position(n)));
        }
    }
    out.push_str("PAYOFF\n");
    match &doc.payoff {
        PayoffSpec::Closed(c) => write_spec_line(&mut out, "closed", c),
        PayoffSpec::Open(c) => write_spec_line(&mut out, "open", c),
        PayoffSpec::UnionOfClosed(parts) => {
            out.push_str("union\n");
            for c in parts {
                write_spec_line(&mut out, "closed", c);
            }
        }
    }
    out
}

/// Smallest alphabet covering every move label of the tree.
pub fn alphabet_of(tree: &GameTree) -> u32 {
    tree.node_ids()
        .skip(1)
        .map(|n| tree.label(n) as MoveLabel + 1)
        .max()
        .unwrap_or(1)
}

impl GameDocument {
    pub fn new(tree: GameTree, payoff: PayoffSpec) -> GameDocument {
        GameDocument {
            version: FORMAT_VERSION,
            alphabet: alphabet_of(&tree),
            tree,
            payoff,
        }
    }
}
