//! Build the covering that unravels a closed payoff and inspect it: the Z
//! sets, I's claims `(a, X)`, II's accept and challenge replies, and the
//! depth at which the pulled-back payoff is decided.
//!
//! Run with `cargo run --example base_covering`.

use std::sync::Arc;

use unravel::covering::{check_position_map, pullback, solve_via_covering};
use unravel::fixtures;
use unravel::payoff::{is_d_decided, ClosedSpec};
use unravel::tree::Position;
use unravel::unravel::{build_base_covering, Caps, Decoration};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = Arc::new(fixtures::ex1());
    let spec = ClosedSpec::new(vec!["1".parse()?]);
    let base = build_base_covering(tree.clone(), &spec, 0, &Caps::default())?;

    for z in base.zsets() {
        let members: Vec<String> = z.positions(&tree).iter().map(|p| p.to_string()).collect();
        println!(
            "Z({}, {}) = {{{}}}",
            tree.position(z.parent),
            z.label,
            members.join(", ")
        );
    }

    let src = base.source();
    println!(
        "claims at the root: {}",
        base.claim_count(&Position::root()).unwrap()
    );
    for &claim in src.children(src.root()) {
        let Decoration::Claim { label, claimed } = base.decoration(claim) else {
            unreachable!()
        };
        let replies: Vec<String> = src
            .children(claim)
            .iter()
            .map(|&r| match base.decoration(r) {
                Decoration::Accept { label } => format!("(1,{label})"),
                Decoration::Challenge { challenged, label } => format!("(2,{challenged},{label})"),
                _ => unreachable!(),
            })
            .collect();
        let claimed: Vec<String> = claimed.iter().map(|p| p.to_string()).collect();
        println!(
            "  ({label},{{{}}}) -> {}",
            claimed.join(","),
            replies.join(" ")
        );
    }

    let c = base.covering();
    check_position_map(c).expect("position map axioms");
    let pulled = pullback(c, base.payoff());
    println!(
        "{} source nodes; pulled-back payoff has {} leaves, decided at depth 2: {}",
        src.len(),
        pulled.len(),
        is_d_decided(src, &pulled, 2)
    );
    println!(
        "accept leaves are exactly the pullback: {}",
        pulled == base.accept_leaves()
    );
    println!(
        "winner through the covering: {}",
        solve_via_covering(c, base.payoff(), 2)?.winner
    );
    Ok(())
}
