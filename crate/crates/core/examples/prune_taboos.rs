//! Remove taboo-determined positions, solve the pruned game, and carry the
//! solution back to the original tree.
//!
//! Run with `cargo run --example prune_taboos`.

use unravel::payoff::LeafSet;
use unravel::solver::{prune, solve, transfer_from_pruned, PruneOutcome};
use unravel::strategy::is_winning_strategy;
use unravel::tree::{GameTree, Player};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // II may end the game at 0/1 (a loss for I), and I may end it at 1/0/1
    // (a loss for II).
    let positions = [
        ("0", None),
        ("0/0", None),
        ("0/0/0", None),
        ("0/0/0/0", None),
        ("0/1", Some(Player::I)),
        ("1", None),
        ("1/0", None),
        ("1/0/0", None),
        ("1/0/0/0", None),
        ("1/0/1", Some(Player::II)),
        ("1/1", None),
        ("1/1/0", None),
        ("1/1/0/0", None),
    ];
    let parsed: Vec<_> = positions
        .iter()
        .map(|(p, t)| Ok((p.parse::<unravel::tree::Position>()?, *t)))
        .collect::<Result<_, String>>()?;
    let tree = GameTree::from_positions(4, parsed)?;
    let a = LeafSet::from_nodes(&tree, tree.find(&"0/0/0/0".parse()?))?;

    let PruneOutcome::Pruned(pruned) = prune(&tree)? else {
        unreachable!("the root has an open line for both players")
    };
    for n in pruned.removed() {
        println!(
            "{} is taboo-determined for {}",
            tree.position(n),
            pruned.determined_for(n).unwrap()
        );
    }
    println!(
        "pruned tree: {} of {} nodes, no early terminals: {}",
        pruned.tree().len(),
        tree.len(),
        pruned.tree().is_pruned()
    );

    let inner = solve(pruned.tree(), &pruned.restrict_payoff(&a));
    let outer = solve(&tree, &a);
    println!(
        "winner after pruning {}, before {}",
        inner.winner, outer.winner
    );

    let lifted = transfer_from_pruned(&tree, &pruned, &inner.strategy)?;
    println!(
        "transferred strategy wins: {}",
        is_winning_strategy(&tree, &a, &lifted)
    );
    Ok(())
}
