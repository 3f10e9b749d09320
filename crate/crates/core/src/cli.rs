//! The `unravel` command line.
//!
//! Exit codes: 0 when every check passes, 2 when a property is violated,
//! 1 for usage, input, or resource errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covering::{
    check_liftstrat, check_position_map, check_strategy_locality, pullback, solve_via_covering,
    verify_all_lifts, Covering,
};
use crate::dot::{base_covering_to_dot, covering_to_dot, tree_to_dot};
use crate::error::Error;
use crate::format::{parse_game_bytes, print_game, GameDocument};
use crate::payoff::{is_d_decided, realize, LeafSet, PayoffSpec};
use crate::random::{random_closed_spec, random_tree, GameShape};
use crate::report::Report;
use crate::solver::{prune, solve, transfer_from_pruned, PruneOutcome};
use crate::strategy::{is_winning_strategy, plays_consistent, Strategy};
use crate::tree::{GameTree, Player};
use crate::unravel::{build_base_covering, unravel_payoff, Caps, Unraveled, Z_MAX};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "unravel",
    version,
    about = "Solve, prune, and unravel finite games with taboos"
)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the game by backward induction.
    Solve { file: PathBuf },
    /// Remove taboo-determined positions and transfer a solution back.
    Prune { file: PathBuf },
    /// Build a covering that unravels the payoff and solve through it.
    Unravel {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Allow union payoffs (chains one covering per member).
        #[arg(long)]
        union: bool,
    },
    /// Build the covering and run every covering check.
    Verify {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the checks on random games.
    Fuzz {
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        branch: u32,
        #[arg(long, default_value_t = Z_MAX)]
        zmax: usize,
    },
    /// Write the game tree, or a base covering of it, in Graphviz format.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        covering: bool,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// A failure that ends the command before a report exists.
struct Abort {
    code: i32,
    message: String,
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        Abort {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

/// Exit code for a command that stopped on `e`.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) | Error::NotUnraveled(_) => EXIT_VIOLATION,
        Error::Stage { source, .. } => exit_code(source),
        _ => EXIT_USAGE,
    }
}

fn usage(message: impl Into<String>) -> Abort {
    Abort {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn load(path: &Path) -> Result<GameDocument, Abort> {
    let bytes = std::fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_game_bytes(&bytes).map_err(|e| usage(format!("{}:{e}", path.display())))
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let started = Instant::now();
    let result = match &cli.command {
        Command::Solve { file } => cmd_solve(file),
        Command::Prune { file } => cmd_prune(file),
        Command::Unravel { file, k, union } => cmd_unravel(file, *k, *union),
        Command::Verify {
            file,
            k,
            samples,
            seed,
        } => cmd_verify(file, *k, *samples, *seed),
        Command::Fuzz {
            samples,
            seed,
            depth,
            branch,
            zmax,
        } => cmd_fuzz(*samples, *seed, *depth, *branch, *zmax),
        Command::ExportDot {
            file,
            covering,
            k,
            output,
        } => {
            return match cmd_export_dot(file, *covering, *k) {
                Ok(dot) => write_dot(&dot, output.as_deref(), out, err),
                Err(a) => {
                    let _ = writeln!(err, "error: {}", a.message);
                    a.code
                }
            }
        }
    };
    match result {
        Ok(mut report) => {
            if cli.timing {
                report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
            }
            let text = if cli.json {
                report.to_json()
            } else {
                report.to_text()
            };
            let _ = out.write_all(text.as_bytes());
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Err(a) => {
            let _ = writeln!(err, "error: {}", a.message);
            a.code
        }
    }
}

fn write_dot(dot: &str, output: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match output {
        Some(path) => match std::fs::write(path, dot) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                EXIT_USAGE
            }
        },
        None => {
            let _ = out.write_all(dot.as_bytes());
            EXIT_OK
        }
    }
}

/// The owner's moves along plays consistent with the strategy, as `position -> move`.
fn strategy_table(tree: &GameTree, s: &Strategy) -> Vec<String> {
    let mut reachable = vec![false; tree.len()];
    for x in plays_consistent(tree, s) {
        for n in tree.path(x) {
            reachable[n.index()] = true;
        }
    }
    tree.descendants(tree.root())
        .into_iter()
        .filter(|n| reachable[n.index()])
        .filter_map(|n| {
            s.choice(n)
                .map(|c| format!("{} -> {}", tree.position(n), tree.label(c)))
        })
        .collect()
}

fn cmd_solve(file: &Path) -> Result<Report, Abort> {
    let doc = load(file)?;
    let a = realize(&doc.tree, &doc.payoff)?;
    let sol = solve(&doc.tree, &a);
    let mut r = Report::new("solve");
    r.param("file", file.display());
    r.fact("nodes", doc.tree.len());
    r.fact("payoff leaves", a.len());
    r.fact("winner", sol.winner);
    r.section("strategy", strategy_table(&doc.tree, &sol.strategy));
    r.check(
        "winning strategy",
        is_winning_strategy(&doc.tree, &a, &sol.strategy),
        None,
    );
    Ok(r)
}

fn cmd_prune(file: &Path) -> Result<Report, Abort> {
    let doc = load(file)?;
    let t = &doc.tree;
    let a = realize(t, &doc.payoff)?;
    let expected = solve(t, &a);
    let mut r = Report::new("prune");
    r.param("file", file.display());
    match prune(t)? {
        PruneOutcome::RootDetermined { player, witness } => {
            r.fact("root determined for", player);
            r.check("solver agrees", expected.winner == player, None);
            r.check(
                "taboo witness wins",
                is_winning_strategy(t, &a, &witness),
                None,
            );
        }
        PruneOutcome::Pruned(pruned) => {
            let removed: Vec<String> = pruned
                .removed()
                .into_iter()
                .map(|n| format!("{} ({})", t.position(n), pruned.determined_for(n).unwrap()))
                .collect();
            r.fact("taboo-determined positions", removed.len());
            r.fact("dropped positions", pruned.dropped().len());
            r.fact("pruned nodes", pruned.tree().len());
            r.section("taboo-determined", removed);
            let restricted = pruned.restrict_payoff(&a);
            let inner = solve(pruned.tree(), &restricted);
            r.fact("winner", inner.winner);
            r.check(
                "pruned tree has no early terminals",
                pruned.tree().is_pruned(),
                None,
            );
            r.check(
                "winner unchanged by pruning",
                inner.winner == expected.winner,
                None,
            );
            let transferred = transfer_from_pruned(t, &pruned, &inner.strategy)?;
            r.check(
                "transferred strategy wins",
                is_winning_strategy(t, &a, &transferred),
                None,
            );
        }
    }
    Ok(r)
}

fn build(doc: &GameDocument, k: usize, allow_union: bool) -> Result<Unraveled, Abort> {
    if matches!(doc.payoff, PayoffSpec::UnionOfClosed(_)) && !allow_union {
        return Err(usage(
            "the payoff is a union; pass --union to chain coverings",
        ));
    }
    Ok(unravel_payoff(
        Arc::new(doc.tree.clone()),
        &doc.payoff,
        k,
        &Caps::from_env(),
    )?)
}

fn describe_unraveling(
    r: &mut Report,
    doc: &GameDocument,
    u: &Unraveled,
    k: usize,
) -> Result<(), Abort> {
    let c = &u.covering;
    r.fact("level", c.level());
    r.fact("source nodes", c.source().len());
    r.fact("certificate depth", u.certificate_depth);
    let stages = u
        .stages
        .iter()
        .enumerate()
        .map(|(i, s)| {
            format!(
                "stage {i}: level {}, {} nodes, max |Z| {}, {} generators",
                s.level, s.source_nodes, s.max_z, s.generators
            )
        })
        .collect();
    r.section("stages", stages);
    if u.stages.len() == 1 {
        // A single base covering: show its Z sets and claim counts.
        let spec = match &doc.payoff {
            PayoffSpec::Closed(c) | PayoffSpec::Open(c) => c.clone(),
            PayoffSpec::UnionOfClosed(parts) => parts[0].clone(),
        };
        let base = build_base_covering(Arc::new(doc.tree.clone()), &spec, k, &Caps::from_env())?;
        let t = base.target();
        let zs = base
            .zsets()
            .map(|z| {
                let members: Vec<String> = z.positions(t).iter().map(|p| p.to_string()).collect();
                format!(
                    "Z({}, {}) = {{{}}}",
                    t.position(z.parent),
                    z.label,
                    members.join(", ")
                )
            })
            .collect();
        r.section("Z sets", zs);
        let level = base.level();
        let claims: usize = base
            .source()
            .node_ids()
            .filter(|&n| base.source().depth(n) == level + 1)
            .count();
        r.fact("claim nodes", claims);
    }
    Ok(())
}

fn cmd_unravel(file: &Path, k: usize, union: bool) -> Result<Report, Abort> {
    let doc = load(file)?;
    let a = realize(&doc.tree, &doc.payoff)?;
    let u = build(&doc, k, union)?;
    let mut r = Report::new("unravel");
    r.param("file", file.display());
    r.param("k", k);
    describe_unraveling(&mut r, &doc, &u, k)?;
    let c = &u.covering;
    let pulled = pullback(c, &a);
    r.check(
        "pullback decided",
        is_d_decided(c.source(), &pulled, u.certificate_depth),
        Some(format!("d = {}", u.certificate_depth)),
    );
    let expected = solve(&doc.tree, &a).winner;
    match solve_via_covering(c, &a, u.certificate_depth) {
        Ok(sol) => {
            r.fact("transferred winner", sol.winner);
            r.check("agrees with direct solve", sol.winner == expected, None);
        }
        Err(e @ (Error::Invariant(_) | Error::NotUnraveled(_))) => {
            r.check("solve through covering", false, Some(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

/// Runs every covering check; returns the first failure as a counterexample.
fn covering_checks(
    r: &mut Report,
    c: &Covering,
    a: &LeafSet,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<(), Abort> {
    let map = check_position_map(c);
    r.check(
        "position map",
        map.is_ok(),
        map.err().map(|v| v.to_string()),
    );
    let loc = check_strategy_locality(c, samples, seed)?;
    r.check(
        "strategy locality",
        loc.passed(),
        loc.failure
            .map(|f| format!("{} at {} below {}", f.reason, f.position, f.cutoff)),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lifted = 0;
    let mut bad = None;
    'outer: for owner in [Player::I, Player::II] {
        for _ in 0..samples {
            let s = Strategy::random(c.source(), owner, &mut rng);
            for rep in verify_all_lifts(c, &s)? {
                lifted += 1;
                if !rep.is_valid() {
                    bad = Some(format!(
                        "lift of {} for {owner} is {} ({:?})",
                        c.target().position(rep.play),
                        c.source().position(rep.lifted),
                        rep
                    ));
                    break 'outer;
                }
            }
        }
    }
    r.check(
        "lifts",
        bad.is_none(),
        Some(bad.unwrap_or(format!("{lifted} plays"))),
    );
    let pulled = pullback(c, a);
    r.check(
        "pullback decided",
        is_d_decided(c.source(), &pulled, d),
        Some(format!("d = {d}")),
    );
    let comp = pullback(c, &a.complement(c.target()));
    r.check(
        "complement decided",
        is_d_decided(c.source(), &comp, d),
        None,
    );
    let ls = check_liftstrat(c, a, samples, seed)?;
    r.check(
        "winning strategies transfer",
        ls.passed(),
        Some(match &ls.counterexample {
            None => format!("{} samples for {}", ls.checked, ls.winner),
            Some(cx) => format!(
                "sample {} loses {}",
                cx.sample,
                c.target().position(cx.play)
            ),
        }),
    );
    let expected = solve(c.target(), a).winner;
    match solve_via_covering(c, a, d) {
        Ok(sol) => r.check(
            "solve through covering",
            sol.winner == expected,
            Some(format!("winner {}", sol.winner)),
        ),
        Err(e @ (Error::Invariant(_) | Error::NotUnraveled(_))) => {
            r.check("solve through covering", false, Some(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn cmd_verify(file: &Path, k: usize, samples: usize, seed: u64) -> Result<Report, Abort> {
    let doc = load(file)?;
    let a = realize(&doc.tree, &doc.payoff)?;
    let u = build(&doc, k, true)?;
    let mut r = Report::new("verify");
    r.seed = Some(seed);
    r.param("file", file.display());
    r.param("k", k);
    r.param("samples", samples);
    r.fact("level", u.covering.level());
    r.fact("source nodes", u.covering.source().len());
    covering_checks(&mut r, &u.covering, &a, u.certificate_depth, samples, seed)?;
    Ok(r)
}

/// Checks of one random game; `Ok(None)` when every check passed.
fn fuzz_one(
    t: &GameTree,
    payoff: &PayoffSpec,
    k: usize,
    caps: &Caps,
    seed: u64,
) -> Result<Option<String>, Error> {
    let a = realize(t, payoff)?;
    let sol = solve(t, &a);
    if !is_winning_strategy(t, &a, &sol.strategy) {
        return Ok(Some("solver strategy does not win".into()));
    }
    if let PruneOutcome::Pruned(pruned) = prune(t)? {
        let inner = solve(pruned.tree(), &pruned.restrict_payoff(&a));
        if inner.winner != sol.winner {
            return Ok(Some("pruning changed the winner".into()));
        }
        let s = transfer_from_pruned(t, &pruned, &inner.strategy)?;
        if !is_winning_strategy(t, &a, &s) {
            return Ok(Some("transferred strategy does not win".into()));
        }
    }
    let u = unravel_payoff(Arc::new(t.clone()), payoff, k, caps)?;
    let mut r = Report::new("fuzz");
    covering_checks(&mut r, &u.covering, &a, u.certificate_depth, 4, seed)
        .map_err(|a| Error::Invariant(a.message))?;
    Ok(r.checks
        .iter()
        .find(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default())))
}

fn cmd_fuzz(
    samples: usize,
    seed: u64,
    depth: usize,
    branch: u32,
    zmax: usize,
) -> Result<Report, Abort> {
    if depth < 2 || branch == 0 {
        return Err(usage("depth must be at least 2 and branch at least 1"));
    }
    let caps = Caps {
        z_max: zmax,
        ..Caps::from_env()
    };
    let shape = GameShape {
        depth,
        branching: branch,
        ..GameShape::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new("fuzz");
    r.seed = Some(seed);
    r.param("samples", samples);
    r.param("depth", depth);
    r.param("branch", branch);
    r.param("zmax", zmax);
    let (mut ok, mut skipped) = (0, 0);
    for i in 0..samples {
        let t = random_tree(&mut rng, &shape);
        let spec = random_closed_spec(&mut rng, &t, shape.generators, 1);
        let payoff = if rng.gen_bool(0.5) {
            PayoffSpec::Closed(spec)
        } else {
            PayoffSpec::Open(spec)
        };
        let mut k = if rng.gen_bool(0.5) { 0 } else { 2 };
        let gens = match &payoff {
            PayoffSpec::Closed(c) | PayoffSpec::Open(c) => c.generators.len(),
            PayoffSpec::UnionOfClosed(_) => unreachable!(),
        };
        if k + 2 > t.depth_bound() || (gens > 0 && k + 2 >= t.depth_bound()) {
            k = 0;
        }
        let sample_seed = rng.gen();
        match fuzz_one(&t, &payoff, k, &caps, sample_seed) {
            Ok(None) => ok += 1,
            Err(Error::ResourceLimit { .. }) => skipped += 1,
            Ok(Some(why)) => {
                r.counterexample = Some(format!(
                    "sample {i}, k = {k}: {why}\n{}",
                    print_game(&GameDocument::new(t, payoff))
                ));
                break;
            }
            Err(e) => {
                r.counterexample = Some(format!(
                    "sample {i}, k = {k}: {e}\n{}",
                    print_game(&GameDocument::new(t, payoff))
                ));
                break;
            }
        }
    }
    r.fact("verified", format!("{ok}/{samples}"));
    r.fact("skipped over caps", skipped);
    r.check("all samples verified", ok + skipped == samples, None);
    Ok(r)
}

fn cmd_export_dot(file: &Path, covering: bool, k: usize) -> Result<String, Abort> {
    let doc = load(file)?;
    let caps = Caps::from_env();
    let a = realize(&doc.tree, &doc.payoff)?;
    if !covering {
        return Ok(tree_to_dot(&doc.tree, Some(&a), caps.node_max)?);
    }
    match &doc.payoff {
        PayoffSpec::Closed(c) | PayoffSpec::Open(c) => {
            let base = build_base_covering(Arc::new(doc.tree.clone()), c, k, &caps)?;
            Ok(base_covering_to_dot(&base, caps.node_max)?)
        }
        PayoffSpec::UnionOfClosed(_) => {
            let u = build(&doc, k, true)?;
            Ok(covering_to_dot(
                &u.covering,
                Some(&a),
                &|_| None,
                caps.node_max,
            )?)
        }
    }
}
