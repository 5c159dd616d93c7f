//! Pre-coloring extension parameterized by `p = n - |Q|`: edge saturation,
//! then either a direct coloring or the clique-modulator kernel.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::instance::{Coloring, Instance, Tag};
use crate::oracle::check_coloring;

use super::pce::{kernelize_pce, lift_pce, PceOutcome};
use super::trace::{KernelTrace, Step};

#[derive(Clone, Debug)]
pub enum SaveOutcome {
    Yes { coloring: Coloring },
    Kernel { instance: Instance, trace: KernelTrace },
    No { trace: KernelTrace },
}

fn palette(inst: &Instance) -> Result<BitSet> {
    if inst.tag != Tag::Save {
        return Err(Error::Usage(format!("expected a SAVE instance, got tag {}", inst.tag)));
    }
    if inst.budget.is_some() {
        return Err(Error::Usage("SAVE instances take no budget".into()));
    }
    Ok(inst.lists.first().cloned().unwrap_or_else(|| BitSet::new(inst.num_colors())))
}

/// Closes the graph under three edge rules and returns the saturated
/// instance with the added edges in order.
///
/// R1 joins two unprecolored vertices whose pre-colored neighbors already
/// see all of `Q`. R2 joins an unprecolored vertex to the whole class of a
/// pre-colored neighbor. R3 joins pre-colored vertices of different colors.
pub fn saturate_edges(inst: &Instance) -> Result<(Instance, Vec<Step>)> {
    let q = palette(inst)?;
    let n = inst.n();
    let mut g = inst.graph.clone();
    let pre = &inst.precoloring;
    let mut added = Vec::new();
    let mut add = |g: &mut crate::graph::Graph, rule: u8, u: usize, v: usize| {
        if !g.has_edge(u, v) {
            g.add_edge(u, v);
            added.push(Step::AddEdge { rule, u: u.min(v), v: u.max(v) });
            true
        } else {
            false
        }
    };
    loop {
        let mut changed = false;
        for u in 0..n {
            for v in u + 1..n {
                if let (Some(a), Some(b)) = (pre[u], pre[v]) {
                    if a != b {
                        changed |= add(&mut g, 3, u, v);
                    }
                }
            }
        }
        for u in (0..n).filter(|&u| pre[u].is_none()) {
            let classes: BitSet =
                BitSet::from_iter_with_capacity(inst.num_colors(), g.neighbors(u).iter().filter_map(|v| pre[v]));
            for w in (0..n).filter(|&w| pre[w].is_some_and(|c| classes.contains(c))) {
                changed |= add(&mut g, 2, u, w);
            }
        }
        let seen: Vec<BitSet> = (0..n)
            .map(|u| BitSet::from_iter_with_capacity(inst.num_colors(), g.neighbors(u).iter().filter_map(|v| pre[v])))
            .collect();
        for u in (0..n).filter(|&u| pre[u].is_none()) {
            for v in (u + 1..n).filter(|&v| pre[v].is_none()) {
                if !g.has_edge(u, v) && q.is_subset(&seen[u].union(&seen[v])) {
                    changed |= add(&mut g, 1, u, v);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = inst.clone();
    out.graph = g;
    Ok((out, added))
}

/// Colors with at most `|Q|` colors when the complement of the saturated
/// graph has a matching with `p` edges.
///
/// Matched edges inside one pre-color class share it. For an edge from an
/// unprecolored `u` to a pre-colored vertex, `u` misses the whole class
/// (by R2), so the first such `u` per class takes the class color. Every
/// remaining unit (an unprecolored pair, a later partner, a lone vertex)
/// gets its own color outside the pre-colors, and there are enough of those.
fn color_by_matching(inst: &Instance, q: &BitSet, pairs: &[(usize, usize)]) -> Result<Coloring> {
    let n = inst.n();
    let pre = &inst.precoloring;
    let mut col = Coloring::empty(n);
    for v in 0..n {
        if let Some(c) = pre[v] {
            col.set(v, c);
        }
    }
    let used_pre = col.used(inst.num_colors());
    let mut taken_class = BitSet::new(inst.num_colors());
    let mut units: Vec<Vec<usize>> = Vec::new();
    let mut matched = BitSet::new(n);
    for &(a, b) in pairs {
        matched.insert(a);
        matched.insert(b);
        match (pre[a], pre[b]) {
            (Some(x), Some(y)) => crate::ensure_internal!(x == y, "matched pre-colored vertices {a}, {b} differ"),
            (None, None) => units.push(vec![a, b]),
            (Some(c), None) | (None, Some(c)) => {
                let u = if pre[a].is_none() { a } else { b };
                if taken_class.insert(c) {
                    col.set(u, c);
                } else {
                    units.push(vec![u]);
                }
            }
        }
    }
    units.extend((0..n).filter(|&v| !matched.contains(v) && pre[v].is_none()).map(|v| vec![v]));
    let free = q.difference(&used_pre);
    crate::ensure_internal!(free.len() >= units.len(), "{} units for {} free colors", units.len(), free.len());
    for (unit, c) in units.iter().zip(free.iter()) {
        for &v in unit {
            col.set(v, c);
        }
    }
    check_coloring(inst, &col).map_err(|e| Error::Internal(format!("matching coloring is invalid: {e}")))?;
    Ok(col)
}

/// Saturates, then answers YES directly or hands a clique modulator of size
/// below `2p` to the pre-coloring kernel, for at most `6p` vertices.
pub fn kernelize_save(inst: &Instance) -> Result<SaveOutcome> {
    let q = palette(inst)?;
    let n = inst.n();
    let p = n.saturating_sub(q.len());
    let (sat, added) = saturate_edges(inst)?;
    let m = sat.graph.complement().maximal_matching();
    if m.len() >= p {
        let coloring = color_by_matching(inst, &q, &m.pairs[..p])?;
        return Ok(SaveOutcome::Yes { coloring });
    }
    let mut pce = sat;
    pce.modulator = Some(m.vertices(n));
    pce.tag = Tag::Pcecm;
    let (outcome, trace) = match kernelize_pce(&pce)? {
        PceOutcome::Kernel { instance, trace } => (Some(instance), trace),
        PceOutcome::No { trace } => (None, trace),
    };
    let trace = KernelTrace { steps: added.into_iter().chain(trace.steps).collect(), no: trace.no };
    match outcome {
        None => Ok(SaveOutcome::No { trace }),
        Some(instance) => {
            crate::ensure_internal!(instance.n() <= 6 * p, "kernel has {} vertices for p = {p}", instance.n());
            Ok(SaveOutcome::Kernel { instance, trace })
        }
    }
}

/// The saturated instance the trace's edge steps describe, as the kernel
/// saw it.
pub fn replay_saturation(inst: &Instance, trace: &KernelTrace) -> Instance {
    let mut sat = inst.clone();
    for s in &trace.steps {
        if let Step::AddEdge { u, v, .. } = *s {
            sat.graph.add_edge(u, v);
        }
    }
    sat
}

/// Lifts a coloring of the kernel to the original instance.
pub fn lift_save(original: &Instance, trace: &KernelTrace, reduced: &Instance, col: &Coloring) -> Result<Coloring> {
    let sat = replay_saturation(original, trace);
    let out = lift_pce(&sat, trace, reduced, col)?;
    check_coloring(original, &out).map_err(|e| Error::Internal(format!("lifted coloring is invalid: {e}")))?;
    Ok(out)
}
