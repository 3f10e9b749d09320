//! Solve two small games by backward induction and print the winner's moves.
//!
//! Run with `cargo run --example solve_game`.

use unravel::fixtures;
use unravel::payoff::{realize, ClosedSpec, LeafSet, PayoffSpec};
use unravel::solver::solve;
use unravel::strategy::{is_winning_strategy, plays_consistent};
use unravel::tree::GameTree;

fn show(name: &str, tree: &GameTree, a: &LeafSet) {
    let sol = solve(tree, a);
    println!(
        "{name}: {} nodes, {} payoff leaves, winner {}",
        tree.len(),
        a.len(),
        sol.winner
    );
    for x in plays_consistent(tree, &sol.strategy) {
        println!("  consistent play {}", tree.position(x));
    }
    assert!(is_winning_strategy(tree, a, &sol.strategy));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Complete binary tree of depth 4; player I wins plays that avoid `1`.
    let ex1 = fixtures::ex1();
    let a = realize(
        &ex1,
        &PayoffSpec::Closed(ClosedSpec::new(vec!["1".parse()?])),
    )?;
    show("ex1", &ex1, &a);

    // Same shape with `0/0` cut short as a loss for II; II wins every infinite play.
    let ex2 = fixtures::ex2();
    show("ex2 with an empty payoff", &ex2, &LeafSet::empty(&ex2));
    Ok(())
}
