use std::collections::HashSet;
use std::sync::Arc;

use super::base::{build_base_covering, BaseCovering};
use super::{round_up_even, Caps};
use crate::covering::{compose, pullback, Covering};
use crate::error::{Error, Result};
use crate::payoff::{decided_set_to_closed_spec, realize, ClosedSpec, PayoffSpec};
use crate::tree::GameTree;

/// One base covering in a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageSummary {
    pub level: usize,
    pub source_nodes: usize,
    pub max_z: usize,
    pub generators: usize,
}

impl StageSummary {
    fn of(base: &BaseCovering, generators: usize) -> StageSummary {
        StageSummary {
            level: base.level(),
            source_nodes: base.source().len(),
            max_z: base.zsets().map(|z| z.len()).max().unwrap_or(0),
            generators,
        }
    }
}

/// A covering that unravels a payoff, with the depth at which the pulled-back
/// payoff is decided.
#[derive(Debug, Clone)]
pub struct Unraveled {
    pub covering: Covering,
    pub certificate_depth: usize,
    pub stages: Vec<StageSummary>,
}

fn at_stage<T>(stage: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage,
        source: Box::new(e),
    })
}

/// The closed set `spec` of `c.target()` pulled back to `c.source()`: excluded
/// are the leaves with a prefix mapped onto a generator.
fn pull_spec(c: &Covering, spec: &ClosedSpec) -> Result<ClosedSpec> {
    let (src, tgt) = (c.source(), c.target());
    let gens: HashSet<_> = spec.generator_nodes(tgt)?.into_iter().collect();
    let mut covered = vec![false; src.len()];
    let mut out = Vec::new();
    for n in src.node_ids() {
        let above = src.parent(n).is_some_and(|p| covered[p.index()]);
        if above {
            covered[n.index()] = true;
        } else if gens.contains(&c.image(n)) && !src.is_terminal(n) {
            covered[n.index()] = true;
            out.push(n);
        }
    }
    out.sort_by_key(|&n| src.position(n));
    Ok(ClosedSpec::new(
        out.into_iter().map(|n| src.position(n)).collect(),
    ))
}

/// Unravels the union of `specs` by chaining base coverings at levels
/// `k, k+1, …` (rounded up to even), then one more base covering at level `k`
/// for the pulled-back union, which is decided by then.
pub fn unravel_union(
    tree: Arc<GameTree>,
    specs: &[ClosedSpec],
    k: usize,
    caps: &Caps,
) -> Result<Unraveled> {
    let k_even = round_up_even(k);
    match specs {
        [] => Ok(Unraveled {
            covering: Covering::identity(tree),
            certificate_depth: 0,
            stages: Vec::new(),
        }),
        [single] => {
            let base = at_stage(0, build_base_covering(tree, single, k_even, caps))?;
            let stages = vec![StageSummary::of(&base, single.generators.len())];
            Ok(Unraveled {
                covering: base.into_covering(),
                certificate_depth: k_even + 2,
                stages,
            })
        }
        _ => {
            let mut composite = Covering::identity(tree.clone());
            let mut stages = Vec::new();
            let mut deepest = 0;
            for (n, spec) in specs.iter().enumerate() {
                let level = round_up_even(k + n);
                let pulled = at_stage(n, pull_spec(&composite, spec))?;
                let base = at_stage(
                    n,
                    build_base_covering(composite.source().clone(), &pulled, level, caps),
                )?;
                stages.push(StageSummary::of(&base, pulled.generators.len()));
                composite = at_stage(n, compose(&composite, base.covering()))?;
                deepest = deepest.max(level);
            }
            let last = specs.len();
            let union = realize(&tree, &PayoffSpec::UnionOfClosed(specs.to_vec()))?;
            let pulled = pullback(&composite, &union);
            let decided = deepest + 2;
            let complement = at_stage(
                last,
                decided_set_to_closed_spec(composite.source(), &pulled, decided),
            )?;
            let base = at_stage(
                last,
                build_base_covering(composite.source().clone(), &complement, k_even, caps),
            )?;
            stages.push(StageSummary::of(&base, complement.generators.len()));
            composite = at_stage(last, compose(&composite, base.covering()))?;
            Ok(Unraveled {
                covering: composite,
                certificate_depth: k_even + 2,
                stages,
            })
        }
    }
}

/// Unravels any payoff description. An open set is unraveled by the covering
/// of its closed complement.
pub fn unravel_payoff(
    tree: Arc<GameTree>,
    spec: &PayoffSpec,
    k: usize,
    caps: &Caps,
) -> Result<Unraveled> {
    match spec {
        PayoffSpec::Closed(c) | PayoffSpec::Open(c) => {
            unravel_union(tree, std::slice::from_ref(c), k, caps)
        }
        PayoffSpec::UnionOfClosed(parts) => {
            if parts.is_empty() {
                return Err(Error::InvalidSpec("empty union".into()));
            }
            unravel_union(tree, parts, k, caps)
        }
    }
}
