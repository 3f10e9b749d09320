//! Generate seeded random games and check every guarantee on each: the
//! solver's strategy wins, pruning keeps the winner, and the base covering
//! satisfies its axioms and transfers the solution.
//!
//! Run with `cargo run --example fuzz_checks -- 300 42` (samples, seed).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unravel::covering::{
    check_liftstrat, check_position_map, check_strategy_locality, pullback, solve_via_covering,
};
use unravel::payoff::{is_d_decided, realize_closed};
use unravel::random::{random_closed_spec, random_tree, GameShape};
use unravel::solver::{solve, solve_via_pruning};
use unravel::strategy::is_winning_strategy;
use unravel::unravel::{build_base_covering, Caps};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let samples: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = GameShape {
        depth: 6,
        branching: 3,
        taboos: 3,
        generators: 3,
    };

    let mut source_nodes = 0;
    for i in 0..samples {
        let tree = random_tree(&mut rng, &shape);
        let spec = random_closed_spec(&mut rng, &tree, shape.generators, 1);
        let a = realize_closed(&tree, &spec)?;
        let k = if rng.gen_bool(0.5) { 0 } else { 2 };

        let direct = solve(&tree, &a);
        assert!(
            is_winning_strategy(&tree, &a, &direct.strategy),
            "sample {i}"
        );
        assert_eq!(
            solve_via_pruning(&tree, &a)?.winner,
            direct.winner,
            "sample {i}"
        );

        let base = build_base_covering(Arc::new(tree), &spec, k, &Caps::default())?;
        let c = base.covering();
        check_position_map(c).expect("position map");
        assert!(
            check_strategy_locality(c, 10, i as u64)?.passed(),
            "sample {i}"
        );
        assert!(
            is_d_decided(c.source(), &pullback(c, &a), k + 2),
            "sample {i}"
        );
        assert_eq!(
            solve_via_covering(c, &a, k + 2)?.winner,
            direct.winner,
            "sample {i}"
        );
        assert!(check_liftstrat(c, &a, 5, i as u64)?.passed(), "sample {i}");
        source_nodes += c.source().len();
    }
    println!(
        "{samples} random games checked (seed {seed}), {source_nodes} covering nodes in total"
    );
    Ok(())
}
