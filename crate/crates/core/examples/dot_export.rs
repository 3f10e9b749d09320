//! Render a game and one of its coverings in Graphviz format.
//!
//! Run with `cargo run --example dot_export > ex2.dot`, then
//! `dot -Tsvg ex2.dot`.

use std::sync::Arc;

use unravel::dot::{base_covering_to_dot, tree_to_dot};
use unravel::fixtures;
use unravel::payoff::{realize_closed, ClosedSpec};
use unravel::unravel::{build_base_covering, Caps};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = fixtures::ex2();
    let spec = ClosedSpec::new(vec!["1/1".parse()?]);
    let a = realize_closed(&tree, &spec)?;
    print!("{}", tree_to_dot(&tree, Some(&a), 1_000)?);

    let base = build_base_covering(Arc::new(tree), &spec, 0, &Caps::default())?;
    let covering = base_covering_to_dot(&base, 10_000)?;
    eprintln!("covering graph: {} lines", covering.lines().count());
    Ok(())
}
