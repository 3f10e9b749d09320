//! Read a game file, print it back in canonical form, and show how errors
//! point at the offending line and column.
//!
//! Run with `cargo run --example game_file`.

use unravel::format::{parse_game, print_game};
use unravel::payoff::realize;
use unravel::solver::solve;

const GAME: &str = "\
# I moves first; II loses at 1 by taboo.
GAME
version 1
alphabet 2
depth 2
NODES
0
0/0
0/1
1
TABOOS
1 II
PAYOFF
open 0
";

fn main() {
    let doc = parse_game(GAME).expect("valid game");
    let a = realize(&doc.tree, &doc.payoff).expect("payoff fits the tree");
    println!("winner: {}", solve(&doc.tree, &a).winner);

    let canonical = print_game(&doc);
    print!("{canonical}");
    assert_eq!(parse_game(&canonical).unwrap(), doc);

    let broken = GAME.replace("0/1\n", "0/1/0\n");
    match parse_game(&broken) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
