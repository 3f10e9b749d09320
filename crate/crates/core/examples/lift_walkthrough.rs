//! Map strategies on the covering tree down to the original game and lift
//! plays back up, for both players.
//!
//! Run with `cargo run --example lift_walkthrough`.

use std::sync::Arc;

use unravel::covering::verify_all_lifts;
use unravel::fixtures;
use unravel::payoff::ClosedSpec;
use unravel::strategy::{plays_consistent, Strategy};
use unravel::tree::Player;
use unravel::unravel::{build_base_covering, Branch, Caps};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = Arc::new(fixtures::ex1());
    let base = build_base_covering(
        tree.clone(),
        &ClosedSpec::new(vec!["1".parse()?]),
        0,
        &Caps::default(),
    )?;
    let (src, c) = (base.source(), base.covering());

    // I claims (1, {1/0}): move 1, and promise that 1/0 is still open.
    let claim = src.child(src.root(), 2).unwrap();
    let sigma = Strategy::from_fn(src, Player::I, |n| {
        if n == src.root() {
            claim
        } else {
            src.children(n)[0]
        }
    })?;
    // II answers by challenging whenever possible.
    let tau = Strategy::from_fn(src, Player::II, |n| *src.children(n).last().unwrap())?;

    for s in [sigma, tau] {
        let mapped = c.map_strategy(&s)?;
        println!("strategy for {}:", s.owner());
        for x in plays_consistent(&tree, &mapped) {
            let lifted = c.lift(&s, x)?;
            let branch = match base.branch(lifted) {
                Some(Branch::Accept) => "accept".to_string(),
                Some(Branch::Challenge(r)) => format!("challenge {r}"),
                None => "-".to_string(),
            };
            let taboo = src
                .taboo(lifted)
                .map(|p| format!(", taboo for {p}"))
                .unwrap_or_default();
            println!(
                "  {} lifts to {} [{branch}{taboo}] over {}",
                tree.position(x),
                src.position(lifted),
                tree.position(c.image(lifted))
            );
        }
        assert!(verify_all_lifts(c, &s)?.iter().all(|r| r.is_valid()));
    }
    Ok(())
}
