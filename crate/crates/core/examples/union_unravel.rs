//! Unravel a union of two closed sets by chaining coverings, then solve the
//! game through the composite.
//!
//! Run with `cargo run --example union_unravel`.

use std::sync::Arc;

use unravel::covering::{check_position_map, pullback, solve_via_covering};
use unravel::fixtures;
use unravel::payoff::{is_d_decided, realize, ClosedSpec, PayoffSpec};
use unravel::solver::solve;
use unravel::unravel::{unravel_union, Caps};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = Arc::new(fixtures::ex1_deep());
    let specs = vec![
        ClosedSpec::new(vec!["1/1".parse()?]),
        ClosedSpec::new(vec!["0/0/1".parse()?]),
    ];
    let a = realize(&tree, &PayoffSpec::UnionOfClosed(specs.clone()))?;

    let u = unravel_union(tree.clone(), &specs, 0, &Caps::default())?;
    for (i, s) in u.stages.iter().enumerate() {
        println!(
            "stage {i}: level {}, {} source nodes, max |Z| {}, {} generators",
            s.level, s.source_nodes, s.max_z, s.generators
        );
    }
    let c = &u.covering;
    check_position_map(c).expect("position map axioms");
    println!(
        "composite: level {}, {} source nodes",
        c.level(),
        c.source().len()
    );

    let d = u.certificate_depth;
    println!(
        "pullback decided at depth {d}: {}",
        is_d_decided(c.source(), &pullback(c, &a), d)
    );
    let via = solve_via_covering(c, &a, d)?;
    println!(
        "winner through the covering {}, directly {}",
        via.winner,
        solve(&tree, &a).winner
    );
    Ok(())
}
