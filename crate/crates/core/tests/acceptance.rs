//! The eight acceptance criteria. Runs without the test harness and prints one
//! line per criterion; exits non-zero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unravel::covering::{
    check_liftstrat, check_position_map, check_strategy_locality, compose, solve_via_covering,
    Covering,
};
use unravel::error::Error;
use unravel::fixtures;
use unravel::format::{parse_game, parse_game_bytes, print_game};
use unravel::payoff::{realize, realize_closed, ClosedSpec, LeafSet, PayoffSpec};
use unravel::random::{random_closed_spec, random_tree, GameShape};
use unravel::solver::{prune, solve, transfer_from_pruned, PruneOutcome};
use unravel::strategy::{is_winning_strategy, Strategy};
use unravel::tree::{GameTree, NodeId, Player, Position};
use unravel::unravel::{build_base_covering, unravel_payoff, unravel_union, BaseCovering, Caps};

use common::{has_winning_strategy, losing_leaves};

type Outcome = Result<String, String>;
/// Arguments, an optional environment override, and the expected exit code.
type ExitCase<'a> = (Vec<String>, Option<(&'a str, &'a str)>, i32);
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn pos(s: &str) -> Position {
    s.parse().unwrap()
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Independent check that `s` wins: walk its choices, branch on the opponent.
fn oracle_wins(tree: &GameTree, a: &LeafSet, s: &Strategy) -> bool {
    losing_leaves(tree, a, s.owner(), |n| s.choice(n).unwrap()).is_empty()
}

/// Game `i` of the shared sample for criteria 1 and 2.
fn sample_game(i: u64) -> (GameTree, ClosedSpec) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + i);
    let shape = GameShape {
        depth: 2 * rng.gen_range(1..=3),
        branching: rng.gen_range(1..=3),
        taboos: 3,
        generators: 3,
    };
    let t = random_tree(&mut rng, &shape);
    let spec = random_closed_spec(&mut rng, &t, shape.generators, 1);
    (t, spec)
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let mut oracle_checked = 0;
    for i in 0..500 {
        let (t, spec) = sample_game(i);
        let a = realize_closed(&t, &spec).map_err(|e| e.to_string())?;
        let sol = solve(&t, &a);
        ensure!(
            is_winning_strategy(&t, &a, &sol.strategy),
            "game {i}: strategy loses"
        );
        ensure!(
            oracle_wins(&t, &a, &sol.strategy),
            "game {i}: oracle finds a losing play"
        );
        let mut compared = false;
        for p in [Player::I, Player::II] {
            if let Some(wins) = has_winning_strategy(&t, &a, p, 12) {
                ensure!(
                    wins == (sol.winner == p),
                    "game {i}: enumeration says {p} wins = {wins}, solver says {}",
                    sol.winner
                );
                compared = true;
            }
        }
        oracle_checked += compared as usize;
    }
    let secs = started.elapsed().as_secs_f64();
    ensure!(started.elapsed().as_secs() < 60, "took {secs:.1} s");
    Ok(format!(
        "500/500 winning, {oracle_checked} games matched enumeration, {secs:.1} s"
    ))
}

fn criterion_2() -> Outcome {
    let (mut root_determined, mut pruned_games) = (0, 0);
    for i in 0..500 {
        let (t, spec) = sample_game(i);
        let a = realize_closed(&t, &spec).map_err(|e| e.to_string())?;
        let expected = solve(&t, &a).winner;
        match prune(&t).map_err(|e| format!("game {i}: {e}"))? {
            PruneOutcome::RootDetermined { player, witness } => {
                root_determined += 1;
                ensure!(
                    player == expected,
                    "game {i}: root determined for the loser"
                );
                ensure!(
                    oracle_wins(&t, &a, &witness),
                    "game {i}: taboo witness loses"
                );
            }
            PruneOutcome::Pruned(p) => {
                pruned_games += 1;
                ensure!(
                    p.tree().is_pruned(),
                    "game {i}: pruned tree has early terminals"
                );
                let inner = solve(p.tree(), &p.restrict_payoff(&a));
                ensure!(
                    inner.winner == expected,
                    "game {i}: pruning changed the winner"
                );
                let s = match transfer_from_pruned(&t, &p, &inner.strategy) {
                    Ok(s) => s,
                    Err(e) => return Err(format!("game {i}: transfer failed: {e}")),
                };
                ensure!(
                    is_winning_strategy(&t, &a, &s),
                    "game {i}: transferred strategy loses"
                );
                ensure!(
                    oracle_wins(&t, &a, &s),
                    "game {i}: oracle finds a losing play"
                );
                // Both players' solutions on T' transfer.
                let other = Strategy::lexicographic(p.tree(), inner.winner.opponent());
                transfer_from_pruned(&t, &p, &other).map_err(|e| format!("game {i}: {e}"))?;
            }
        }
    }
    Ok(format!(
        "{pruned_games} pruned, {root_determined} root-determined, 0 disagreements"
    ))
}

/// One base-covering instance for criteria 3 to 5.
struct Instance {
    tree: Arc<GameTree>,
    a: LeafSet,
    k: usize,
    base: BaseCovering,
}

fn base_instances() -> (Vec<Instance>, usize) {
    let mut out = Vec::new();
    let mut skipped = 0;
    let caps = Caps::default();
    for i in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xba5e_0000 + i);
        let shape = GameShape {
            depth: if rng.gen_bool(0.5) { 4 } else { 6 },
            branching: rng.gen_range(2..=3),
            taboos: 3,
            generators: 3,
        };
        let t = Arc::new(random_tree(&mut rng, &shape));
        let spec = random_closed_spec(&mut rng, &t, 3, 1);
        let mut k = if rng.gen_bool(0.5) { 0 } else { 2 };
        if k + 2 >= t.depth_bound() {
            k = 0;
        }
        let a = realize_closed(&t, &spec).unwrap();
        match build_base_covering(t.clone(), &spec, k, &caps) {
            Ok(base) => out.push(Instance {
                tree: t,
                a,
                k,
                base,
            }),
            Err(Error::ResourceLimit { .. }) => skipped += 1,
            Err(e) => panic!("instance {i}: {e}"),
        }
    }
    (out, skipped)
}

/// Plays of `tree` consistent with `s`.
fn consistent_plays(tree: &GameTree, s: &Strategy) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut stack = vec![tree.root()];
    while let Some(n) = stack.pop() {
        let kids = tree.children(n);
        if kids.is_empty() {
            out.push(n);
        } else if tree.mover(n) == s.owner() {
            stack.push(s.choice(n).unwrap());
        } else {
            stack.extend_from_slice(kids);
        }
    }
    out
}

/// The lifting condition, checked from the definitions.
fn lift_ok(c: &Covering, s: &Strategy, x: NodeId) -> Result<(), String> {
    let (src, tgt) = (c.source(), c.target());
    let lifted = c.lift(s, x).map_err(|e| e.to_string())?;
    if !src.children(lifted).is_empty() {
        return Err(format!("lift of {} is not a play", tgt.position(x)));
    }
    let path = src.path(lifted);
    for w in path.windows(2) {
        if src.mover(w[0]) == s.owner() && s.choice(w[0]) != Some(w[1]) {
            return Err(format!("lift of {} leaves the strategy", tgt.position(x)));
        }
    }
    let image = c.image(lifted);
    if !tgt.is_prefix(image, x) {
        return Err(format!("lift of {} projects off the play", tgt.position(x)));
    }
    if image != x && src.taboo(lifted) != Some(s.owner()) {
        return Err(format!(
            "lift of {} stops early without a taboo",
            tgt.position(x)
        ));
    }
    Ok(())
}

fn criterion_3(instances: &[Instance], skipped: usize) -> Outcome {
    let mut lifted = 0;
    for (i, inst) in instances.iter().enumerate() {
        let c = inst.base.covering();
        check_position_map(c).map_err(|v| format!("instance {i}: {v}"))?;
        let loc = check_strategy_locality(c, 50, i as u64).map_err(|e| e.to_string())?;
        ensure!(loc.passed(), "instance {i}: locality {:?}", loc.failure);
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        for owner in [Player::I, Player::II] {
            for _ in 0..20 {
                let s = Strategy::random(c.source(), owner, &mut rng);
                let mapped = c.map_strategy(&s).map_err(|e| e.to_string())?;
                for x in consistent_plays(c.target(), &mapped) {
                    lift_ok(c, &s, x).map_err(|e| format!("instance {i}: {e}"))?;
                    lifted += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} instances ({skipped} over caps), {lifted} lifts valid",
        instances.len()
    ))
}

/// Whether membership in `s` is fixed by the length-`d` prefix of each leaf.
fn decided(tree: &GameTree, s: &LeafSet, d: usize) -> bool {
    let mut seen: HashMap<Position, bool> = HashMap::new();
    tree.leaves().into_iter().all(|l| {
        let inside = s.contains(l);
        *seen.entry(tree.position(l).truncate(d)).or_insert(inside) == inside
    })
}

fn pulled(c: &Covering, a: &LeafSet) -> LeafSet {
    let src = c.source();
    LeafSet::from_nodes(
        src,
        src.leaves().into_iter().filter(|&l| a.contains(c.image(l))),
    )
    .unwrap()
}

fn criterion_4(instances: &[Instance]) -> Outcome {
    for (i, inst) in instances.iter().enumerate() {
        let c = inst.base.covering();
        let p = pulled(c, &inst.a);
        ensure!(
            p == unravel::covering::pullback(c, &inst.a),
            "instance {i}: pullback differs"
        );
        ensure!(
            decided(c.source(), &p, inst.k + 2),
            "instance {i}: pullback not decided"
        );
        ensure!(
            p == inst.base.accept_leaves(),
            "instance {i}: pullback is not the accept set"
        );
        let comp = pulled(c, &inst.a.complement(&inst.tree));
        ensure!(
            decided(c.source(), &comp, inst.k + 2),
            "instance {i}: complement not decided"
        );
    }
    Ok(format!("{} certificates at depth k+2", instances.len()))
}

fn criterion_5(instances: &[Instance]) -> Outcome {
    let mut wins = [0, 0];
    for (i, inst) in instances.iter().enumerate() {
        let c = inst.base.covering();
        let expected = solve(&inst.tree, &inst.a).winner;
        let sol =
            solve_via_covering(c, &inst.a, inst.k + 2).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(sol.winner == expected, "instance {i}: winner differs");
        ensure!(
            oracle_wins(&inst.tree, &inst.a, &sol.strategy),
            "instance {i}: transferred strategy loses"
        );
        let ls = check_liftstrat(c, &inst.a, 20, i as u64).map_err(|e| e.to_string())?;
        ensure!(ls.passed(), "instance {i}: liftstrat counterexample");
        wins[expected.index()] += 1;
    }
    Ok(format!(
        "winners agree ({} for I, {} for II), liftstrat clean",
        wins[0], wins[1]
    ))
}

fn criterion_6() -> Outcome {
    let caps = Caps::default();
    let (mut done, mut skipped, mut max_nodes) = (0, 0, 0);
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0410_0000 + i);
        let m = rng.gen_range(2..=3);
        let shape = GameShape {
            depth: if m == 2 && rng.gen_bool(0.5) { 6 } else { 8 },
            branching: 2,
            taboos: 3,
            generators: 2,
        };
        let t = Arc::new(random_tree(&mut rng, &shape));
        let specs: Vec<ClosedSpec> = (0..m)
            .map(|_| random_closed_spec(&mut rng, &t, 2, 1))
            .collect();
        let a = realize(&t, &PayoffSpec::UnionOfClosed(specs.clone())).unwrap();
        let u = match unravel_union(t.clone(), &specs, 0, &caps) {
            Ok(u) => u,
            Err(Error::Stage { source, .. }) if matches!(*source, Error::ResourceLimit { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(format!("union {i}: {e}")),
        };
        let c = &u.covering;
        let min_level = u.stages.iter().map(|s| s.level).min().unwrap();
        ensure!(
            c.level() == min_level,
            "union {i}: level {} vs min {min_level}",
            c.level()
        );
        check_position_map(c).map_err(|v| format!("union {i}: {v}"))?;
        ensure!(
            check_strategy_locality(c, 10, i)
                .map_err(|e| e.to_string())?
                .passed(),
            "union {i}: locality"
        );
        let mut srng = ChaCha8Rng::seed_from_u64(i);
        for owner in [Player::I, Player::II] {
            for _ in 0..3 {
                let s = Strategy::random(c.source(), owner, &mut srng);
                let mapped = c.map_strategy(&s).map_err(|e| e.to_string())?;
                for x in consistent_plays(&t, &mapped) {
                    lift_ok(c, &s, x).map_err(|e| format!("union {i}: {e}"))?;
                }
            }
        }
        ensure!(
            decided(c.source(), &pulled(c, &a), u.certificate_depth),
            "union {i}: not decided"
        );
        let sol = solve_via_covering(c, &a, u.certificate_depth)
            .map_err(|e| format!("union {i}: {e}"))?;
        ensure!(
            sol.winner == solve(&t, &a).winner,
            "union {i}: winner differs"
        );
        ensure!(
            oracle_wins(&t, &a, &sol.strategy),
            "union {i}: transferred strategy loses"
        );
        max_nodes = max_nodes.max(c.source().len());
        done += 1;
    }
    // The min rule on a direct composition of two coverings with different levels.
    let t = Arc::new(fixtures::ex1_deep());
    let inner_target =
        build_base_covering(t.clone(), &ClosedSpec::new(vec![pos("1/1/0")]), 2, &caps).unwrap();
    let outer = inner_target.covering();
    let inner =
        build_base_covering(outer.source().clone(), &ClosedSpec::default(), 4, &caps).unwrap();
    let both = compose(outer, inner.covering()).map_err(|e| e.to_string())?;
    ensure!(
        both.level() == 2,
        "composite of levels 2 and 4 has level {}",
        both.level()
    );
    check_position_map(&both).map_err(|v| v.to_string())?;
    ensure!(done > 0, "every union exceeded the caps");
    Ok(format!(
        "{done} unions agree ({skipped} over caps), largest source {max_nodes} nodes"
    ))
}

fn criterion_7() -> Outcome {
    let caps = Caps::default();
    let ex1 = Arc::new(fixtures::ex1());
    let spec = ClosedSpec::new(vec![pos("1")]);
    let base = build_base_covering(ex1.clone(), &spec, 0, &caps).map_err(|e| e.to_string())?;
    let z = base.zset_for(&Position::root(), 1).unwrap().positions(&ex1);
    ensure!(z == vec![pos("1/0"), pos("1/1")], "Z(root, 1) = {z:?}");
    let kids = base.source().children(base.source().root()).len();
    ensure!(kids == 5, "{kids} root children");
    let u = unravel_payoff(ex1.clone(), &PayoffSpec::Closed(spec.clone()), 0, &caps)
        .map_err(|e| e.to_string())?;
    ensure!(u.certificate_depth == 2, "d = {}", u.certificate_depth);
    let a = realize_closed(&ex1, &spec).unwrap();
    let w1 = solve_via_covering(&u.covering, &a, 2)
        .map_err(|e| e.to_string())?
        .winner;
    ensure!(w1 == Player::I, "ex1 winner {w1}");

    let ex2 = Arc::new(fixtures::ex2());
    let empty = ClosedSpec::new(vec![pos("0"), pos("1")]);
    let a2 = realize_closed(&ex2, &empty).unwrap();
    ensure!(a2.is_empty(), "ex2 payoff is not empty");
    ensure!(solve(&ex2, &a2).winner == Player::II, "ex2 direct winner");
    let u2 = unravel_payoff(ex2.clone(), &PayoffSpec::Closed(empty), 0, &caps)
        .map_err(|e| e.to_string())?;
    let w2 = solve_via_covering(&u2.covering, &a2, 2)
        .map_err(|e| e.to_string())?
        .winner;
    ensure!(w2 == Player::II, "ex2 winner {w2}");

    // Reports are bit-identical across runs and match the stored goldens.
    let dir = env!("CARGO_MANIFEST_DIR");
    for (game, golden) in [
        ("ex1.game", "ex1_verify.txt"),
        ("ex2.game", "ex2_verify.txt"),
    ] {
        let args = [
            "unravel",
            "verify",
            &format!("{dir}/fixtures/{game}"),
            "--k",
            "0",
            "--seed",
            "3",
        ];
        let run = || {
            let mut out = Vec::new();
            let code = unravel::cli::run(args, &mut out, &mut Vec::new());
            (code, String::from_utf8(out).unwrap())
        };
        let (c1, first) = run();
        let (c2, second) = run();
        ensure!(c1 == 0 && c2 == 0, "{game}: exit codes {c1}, {c2}");
        ensure!(first == second, "{game}: reports differ between runs");
        let want = fixture(golden).replace("$DIR", dir);
        ensure!(
            first == want,
            "{game}: report differs from {golden}:\n{first}"
        );
    }
    Ok("ex1: Z = {1/0, 1/1}, 5 claims, d = 2, winner I; ex2: winner II; reports stable".into())
}

/// A copy of `base` with a few random byte edits.
fn mutate(rng: &mut ChaCha8Rng, base: &[u8]) -> Vec<u8> {
    let mut v = base.to_vec();
    for _ in 0..rng.gen_range(1..=4) {
        let at = rng.gen_range(0..=v.len());
        match rng.gen_range(0..4) {
            0 if at < v.len() => v[at] = rng.gen(),
            1 => v.insert(at, *b"0123/ \n#IVX".get(rng.gen_range(0..11)).unwrap()),
            2 if at < v.len() => {
                v.remove(at);
            }
            _ => {
                let end = (at + rng.gen_range(0..20)).min(v.len());
                let chunk = v[at..end].to_vec();
                let to = rng.gen_range(0..=v.len());
                v.splice(to..to, chunk);
            }
        }
    }
    v
}

fn criterion_8() -> Outcome {
    let dir = env!("CARGO_MANIFEST_DIR");
    let games = [
        "ex1.game",
        "ex2.game",
        "ex3.game",
        "ex3_taboo.game",
        "deep_union.game",
    ];

    // Round trip on every fixture.
    for g in games {
        let text = fixture(g);
        let doc = parse_game(&text).map_err(|e| format!("{g}: {e}"))?;
        ensure!(print_game(&doc) == text, "{g} is not canonical");
    }

    // Parser fuzz: random bytes and mutated fixtures.
    let mut rng = ChaCha8Rng::seed_from_u64(0xf022);
    let seeds: Vec<Vec<u8>> = games[..4].iter().map(|g| fixture(g).into_bytes()).collect();
    let (mut accepted, mut rejected) = (0, 0);
    for i in 0..10_000 {
        let bytes: Vec<u8> = if i % 2 == 0 {
            let len = rng.gen_range(0..200);
            (0..len).map(|_| rng.gen()).collect()
        } else {
            let s = &seeds[rng.gen_range(0..seeds.len())];
            mutate(&mut rng, s)
        };
        let result = catch_unwind(AssertUnwindSafe(|| parse_game_bytes(&bytes))).map_err(|_| {
            format!(
                "parser panicked on input {i}: {:?}",
                String::from_utf8_lossy(&bytes)
            )
        })?;
        match result {
            Ok(doc) => {
                accepted += 1;
                let again = parse_game(&print_game(&doc))
                    .map_err(|e| format!("input {i}: reprint fails: {e}"))?;
                ensure!(again == doc, "input {i}: round trip changed the game");
            }
            Err(e) => {
                rejected += 1;
                ensure!(
                    e.line >= 1 && e.column >= 1,
                    "input {i}: error without a position"
                );
            }
        }
    }

    // Exit-code contract, through the binary.
    let bin = env!("CARGO_BIN_EXE_unravel");
    let code = |args: &[&str], env: Option<(&str, &str)>| {
        let mut cmd = Command::new(bin);
        cmd.args(args);
        if let Some((k, v)) = env {
            cmd.env(k, v);
        }
        cmd.output().unwrap().status.code().unwrap()
    };
    let f = |g: &str| format!("{dir}/fixtures/{g}");
    let bad = std::env::temp_dir().join(format!("unravel-bad-{}.game", std::process::id()));
    std::fs::write(&bad, "GAME\nversion 1\nNODES\nzz\n").unwrap();
    let bad = bad.to_str().unwrap().to_string();
    let cases: Vec<ExitCase> = vec![
        (vec!["solve".into(), f("ex1.game")], None, 0),
        (vec!["prune".into(), f("ex2.game")], None, 0),
        (
            vec!["unravel".into(), f("ex1.game"), "--k".into(), "0".into()],
            None,
            0,
        ),
        (
            vec![
                "unravel".into(),
                f("deep_union.game"),
                "--k".into(),
                "0".into(),
                "--union".into(),
            ],
            None,
            0,
        ),
        (vec!["export-dot".into(), f("ex3.game")], None, 0),
        (
            vec![
                "fuzz".into(),
                "--samples".into(),
                "200".into(),
                "--seed".into(),
                "7".into(),
            ],
            None,
            0,
        ),
        (vec!["--help".into()], None, 0),
        (
            vec![
                "unravel".into(),
                f("deep_union.game"),
                "--k".into(),
                "0".into(),
            ],
            None,
            1,
        ),
        (vec!["solve".into(), f("missing.game")], None, 1),
        (vec!["solve".into(), bad.clone()], None, 1),
        (vec!["solve".into()], None, 1),
        (vec!["frobnicate".into()], None, 1),
        (
            vec!["unravel".into(), f("ex1.game"), "--k".into(), "2".into()],
            None,
            1,
        ),
        (
            vec!["unravel".into(), f("ex1.game"), "--k".into(), "0".into()],
            Some(("UNRAVEL_NODE_MAX", "10")),
            1,
        ),
    ];
    for (args, env, want) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = code(&args, *env);
        ensure!(
            got == *want,
            "`unravel {}` exited {got}, expected {want}",
            args.join(" ")
        );
    }
    let _ = std::fs::remove_file(&bad);
    for e in [
        Error::Invariant("x".into()),
        Error::NotUnraveled(3),
        Error::Stage {
            stage: 1,
            source: Box::new(Error::Invariant("x".into())),
        },
    ] {
        ensure!(
            unravel::cli::exit_code(&e) == 2,
            "{e} does not map to exit 2"
        );
    }
    ensure!(
        unravel::cli::exit_code(&Error::Precondition("x".into())) == 1,
        "precondition exit code"
    );
    Ok(format!(
        "10000 inputs, 0 crashes ({accepted} accepted, {rejected} rejected), {} fixtures round-trip, {} exit-code cases",
        games.len(),
        cases.len() + 4
    ))
}

fn main() {
    let (instances, skipped) = base_instances();
    let criteria: Vec<Criterion> = vec![
        ("determinacy oracle", Box::new(criterion_1)),
        ("pruning and transfer", Box::new(criterion_2)),
        (
            "base covering axioms",
            Box::new(|| criterion_3(&instances, skipped)),
        ),
        ("clopen certificate", Box::new(|| criterion_4(&instances))),
        (
            "solving through coverings",
            Box::new(|| criterion_5(&instances)),
        ),
        ("finite unions", Box::new(criterion_6)),
        ("worked examples", Box::new(criterion_7)),
        ("cli robustness", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let ms = started.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {ms} ms)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
