//! Kernel for pre-coloring extension on graphs that become a clique after
//! deleting a modulator `D`.
//!
//! Notation used below: `D'` is the unprecolored part of `D`, `C = V \ D`,
//! `C_N` the clique vertices with a non-neighbor in `D'`, `C' = C \ C_N`.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{find_deficient_set, BipartiteGraph, Side};
use crate::instance::{Coloring, Instance, InstanceSpec, Tag};
use crate::oracle::{brute_backtrack_capped, check_coloring};

use super::trace::{KernelTrace, Step};

#[derive(Clone, Debug)]
pub enum PceOutcome {
    Kernel { instance: Instance, trace: KernelTrace },
    No { trace: KernelTrace },
}

impl PceOutcome {
    pub fn trace(&self) -> &KernelTrace {
        match self {
            PceOutcome::Kernel { trace, .. } | PceOutcome::No { trace } => trace,
        }
    }
}

/// Working state over the ids of the input instance.
#[derive(Clone, Debug)]
pub struct PceState<'a> {
    inst: &'a Instance,
    alive: BitSet,
    palette: BitSet,
    modulator: BitSet,
    pub trace: KernelTrace,
}

impl<'a> PceState<'a> {
    pub fn new(inst: &'a Instance) -> Result<Self> {
        let modulator = inst.modulator.clone().ok_or(Error::MissingModulator)?;
        let n = inst.n();
        if (1..n).any(|v| inst.lists[v] != inst.lists[0]) {
            return Err(Error::Usage("pre-coloring extension needs one shared palette".into()));
        }
        if inst.budget.is_some() {
            return Err(Error::Usage("budget constraints are not part of pre-coloring extension".into()));
        }
        let palette = inst.lists.first().cloned().unwrap_or_else(|| BitSet::new(inst.num_colors()));
        Ok(PceState { inst, alive: BitSet::full(n), palette, modulator, trace: KernelTrace::default() })
    }

    pub fn alive(&self) -> &BitSet {
        &self.alive
    }

    pub fn palette(&self) -> &BitSet {
        &self.palette
    }

    fn precolored(&self, v: usize) -> bool {
        self.inst.precoloring[v].is_some()
    }

    /// Unprecolored modulator vertices still present.
    pub fn d_free(&self) -> BitSet {
        let mut d = self.modulator.intersection(&self.alive);
        for v in d.clone().iter().filter(|&v| self.precolored(v)) {
            d.remove(v);
        }
        d
    }

    pub fn clique(&self) -> BitSet {
        self.alive.difference(&self.modulator)
    }

    /// Clique vertices with at least one non-neighbor in `D'`.
    pub fn clique_non_universal(&self) -> BitSet {
        let d = self.d_free();
        let c = self.clique();
        BitSet::from_iter_with_capacity(
            self.inst.n(),
            c.iter().filter(|&v| !d.is_subset(self.inst.graph.neighbors(v))),
        )
    }

    fn degree(&self, v: usize) -> usize {
        self.inst.graph.neighbors(v).intersection_len(&self.alive)
    }

    fn remove(&mut self, step: Step) {
        for v in step.removed_vertices() {
            self.alive.remove(v);
        }
        for c in step.removed_colors() {
            self.palette.remove(c);
        }
        self.trace.steps.push(step);
    }

    /// Removes one vertex of `D'` whose degree is below `|Q|`.
    pub fn rule_low_degree(&mut self) -> bool {
        let q = self.palette.len();
        match self.d_free().iter().find(|&v| self.degree(v) < q) {
            Some(vertex) => {
                self.remove(Step::LowDegree { vertex });
                true
            }
            None => false,
        }
    }

    /// Looks for `A ⊆ C_N` with fewer non-neighbors in `D` than members and
    /// removes the unprecolored ones among those non-neighbors. The
    /// saturating matching is kept so the lift can reuse the colors of `A`.
    pub fn rule_crown(&mut self) -> bool {
        let cn: Vec<usize> = self.clique_non_universal().iter().collect();
        let d: Vec<usize> = self.modulator.intersection(&self.alive).iter().collect();
        let mut j = BipartiteGraph::new(cn.len(), d.len());
        for (a, &c) in cn.iter().enumerate() {
            for (b, &v) in d.iter().enumerate() {
                if !self.inst.graph.has_edge(c, v) {
                    j.add_edge(a, b);
                }
            }
        }
        let Some(def) = find_deficient_set(&j, Side::Left) else {
            return false;
        };
        // Every vertex of C_N has a non-neighbor in D', so this is never empty.
        let free = |b: &usize| !self.precolored(d[*b]);
        let step = Step::Crown {
            set: def.set.iter().map(|a| cn[a]).collect(),
            removed: def.neighborhood.iter().filter(free).map(|b| d[b]).collect(),
            matching: def.matching.pairs.iter().filter(|(_, b)| free(b)).map(|&(a, b)| (d[b], cn[a])).collect(),
        };
        self.remove(step);
        true
    }

    /// A pre-colored vertex of `C'` sees every other vertex that could take
    /// its color, so its color class and the color itself can go.
    pub fn rule_precolored_clique(&mut self) -> bool {
        let cn = self.clique_non_universal();
        let c_prime = self.clique().difference(&cn);
        let Some(v) = c_prime.iter().find(|&v| self.precolored(v)) else {
            return false;
        };
        let color = self.inst.precoloring[v].unwrap();
        let class = self.alive.iter().filter(|&u| self.inst.precoloring[u] == Some(color)).collect();
        self.remove(Step::PrecoloredClique { color, class });
        true
    }

    /// Applies the three reduction rules until none fires.
    pub fn exhaust(&mut self) {
        while self.rule_low_degree() || self.rule_crown() || self.rule_precolored_clique() {}
    }

    /// Matches `C'` against the pre-colors `P` (a vertex and a color are
    /// adjacent when no vertex pre-colored with that color is a neighbor),
    /// then removes the unmatched part of `C'` along with as many of the
    /// lowest palette colors that no vertex is pre-colored with. Returns
    /// `false` when too few such colors remain, which certifies NO.
    pub fn rule_matching_trim(&mut self) -> bool {
        let cn = self.clique_non_universal();
        let cp: Vec<usize> = self.clique().difference(&cn).iter().collect();
        let mut used = BitSet::new(self.inst.num_colors());
        for v in self.alive.iter() {
            if let Some(c) = self.inst.precoloring[v] {
                used.insert(c);
            }
        }
        let pre: Vec<usize> = used.iter().collect();
        let mut h = BipartiteGraph::new(cp.len(), pre.len());
        for (a, &v) in cp.iter().enumerate() {
            for (b, &c) in pre.iter().enumerate() {
                let blocked = self
                    .inst
                    .graph
                    .neighbors(v)
                    .iter()
                    .any(|u| self.alive.contains(u) && self.inst.precoloring[u] == Some(c));
                if !blocked {
                    h.add_edge(a, b);
                }
            }
        }
        let m = h.maximum_matching();
        let mut matched = vec![false; cp.len()];
        for &(a, _) in &m.pairs {
            matched[a] = true;
        }
        let removed: Vec<usize> = (0..cp.len()).filter(|&a| !matched[a]).map(|a| cp[a]).collect();
        let free: Vec<usize> = self.palette.difference(&used).iter().take(removed.len()).collect();
        if free.len() < removed.len() {
            self.trace.no = true;
            return false;
        }
        if !removed.is_empty() {
            let matching = m.pairs.iter().map(|&(a, b)| (cp[a], pre[b])).collect();
            self.remove(Step::MatchingTrim { removed, colors: free, matching });
        }
        true
    }

    /// The current reduced instance, vertices renumbered in ascending order.
    pub fn to_instance(&self) -> Result<Instance> {
        let keep: Vec<usize> = self.alive.iter().collect();
        let mut pos = vec![usize::MAX; self.inst.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let label = |c: usize| self.inst.label(c);
        let mut spec = InstanceSpec::new(keep.len());
        spec.edges = self
            .inst
            .graph
            .edges()
            .filter(|&(u, v)| self.alive.contains(u) && self.alive.contains(v))
            .map(|(u, v)| (pos[u], pos[v]))
            .collect();
        let q: Vec<u32> = self.palette.iter().map(label).collect();
        spec.lists = vec![q; keep.len()];
        spec.precoloring = keep
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| self.inst.precoloring[v].map(|c| (i, label(c))))
            .collect();
        spec.modulator = Some(self.modulator.iter().filter(|&v| self.alive.contains(v)).map(|v| pos[v]).collect());
        spec.tag = Tag::Pcecm;
        spec.k = self.inst.k;
        spec.build()
    }
}

/// Runs the reduction rules to a fixpoint, then the matching trim once.
pub fn kernelize_pce(inst: &Instance) -> Result<PceOutcome> {
    let mut st = PceState::new(inst)?;
    st.exhaust();
    if !st.rule_matching_trim() {
        return Ok(PceOutcome::No { trace: st.trace });
    }
    let k = inst.modulator.as_ref().map_or(0, BitSet::len);
    let out = st.to_instance()?;
    crate::ensure_internal!(out.n() <= 3 * k, "kernel has {} vertices for a modulator of size {k}", out.n());
    Ok(PceOutcome::Kernel { instance: out, trace: st.trace })
}

/// Extends a coloring of the reduced instance to the original one by
/// undoing the trace from its last step.
pub fn lift_pce(original: &Instance, trace: &KernelTrace, reduced: &Instance, col: &Coloring) -> Result<Coloring> {
    if trace.no {
        return Err(Error::Usage("the trace ends in NO; there is nothing to lift".into()));
    }
    check_coloring(reduced, col).map_err(Error::InvalidColoring)?;
    let keep = trace.surviving(original.n());
    if keep.len() != reduced.n() {
        return Err(Error::Usage(format!(
            "trace keeps {} vertices but the reduced instance has {}",
            keep.len(),
            reduced.n()
        )));
    }
    let mut out = Coloring::empty(original.n());
    for (i, &v) in keep.iter().enumerate() {
        let c = col.get(i).unwrap();
        let id = original
            .color_id(reduced.label(c))
            .ok_or_else(|| Error::InvalidColoring(format!("color {} unknown to the original", reduced.label(c))))?;
        out.set(v, id);
    }
    let mut palette = original.lists.first().cloned().unwrap_or_else(|| BitSet::new(original.num_colors()));
    for s in &trace.steps {
        for c in s.removed_colors() {
            palette.remove(c);
        }
    }
    for step in trace.steps.iter().rev() {
        match step {
            Step::MatchingTrim { removed, colors, .. } => {
                for (&v, &c) in removed.iter().zip(colors) {
                    out.set(v, c);
                }
            }
            Step::PrecoloredClique { class, .. } => {
                for &v in class {
                    out.set(v, original.precoloring[v].expect("color class of a non-precolored vertex"));
                }
            }
            Step::Crown { set, removed, matching } => {
                for &(v, a) in matching {
                    let c = out.get(a).ok_or_else(|| Error::Internal(format!("crown partner {a} is uncolored")))?;
                    out.set(v, c);
                }
                let clash = removed
                    .iter()
                    .any(|&v| original.graph.neighbors(v).iter().any(|u| out.get(u).is_some() && out.get(u) == out.get(v)));
                if clash {
                    let local: Vec<usize> =
                        set.iter().chain(removed).copied().filter(|&v| original.precoloring[v].is_none()).collect();
                    recolor_locally(original, &mut out, &local, &palette)?;
                }
            }
            Step::LowDegree { vertex } => {
                let mut free = palette.clone();
                for u in original.graph.neighbors(*vertex) {
                    if let Some(c) = out.get(u) {
                        free.remove(c);
                    }
                }
                let c = free
                    .first()
                    .ok_or_else(|| Error::Internal(format!("no free color left for low-degree vertex {vertex}")))?;
                out.set(*vertex, c);
            }
            Step::AddEdge { .. } => {}
        }
        for c in step.removed_colors() {
            palette.insert(c);
        }
    }
    check_coloring(original, &out).map_err(|e| Error::Internal(format!("lifted coloring is invalid: {e}")))?;
    Ok(out)
}

/// Recolors `local` with palette colors so the coloring is proper again,
/// keeping every other colored vertex fixed.
///
/// The recorded crown matching can hand a removed vertex the color of a
/// pre-colored neighbor when that pre-color also sits on a non-adjacent
/// member of the crown set; solving the crown part again settles it.
fn recolor_locally(inst: &Instance, out: &mut Coloring, local: &[usize], palette: &BitSet) -> Result<()> {
    let mut pos = vec![usize::MAX; inst.n()];
    for (i, &v) in local.iter().enumerate() {
        pos[v] = i;
        out.0[v] = None;
    }
    let label = |c: usize| inst.label(c);
    let mut spec = InstanceSpec::new(local.len());
    for (i, &v) in local.iter().enumerate() {
        let mut allowed = palette.clone();
        for u in inst.graph.neighbors(v) {
            match (pos[u], out.get(u)) {
                (usize::MAX, Some(c)) => {
                    allowed.remove(c);
                }
                (j, _) if j != usize::MAX && j > i => spec.edges.push((i, j)),
                _ => {}
            }
        }
        spec.lists[i] = allowed.iter().map(label).collect();
    }
    let sub = spec.build()?;
    let sol = brute_backtrack_capped(&sub, local.len())?
        .ok_or_else(|| Error::Internal("crown vertices admit no recoloring".into()))?;
    for (i, &v) in local.iter().enumerate() {
        out.set(v, inst.color_id(sub.label(sol.get(i).unwrap())).unwrap());
    }
    Ok(())
}

/// Carries a proper extension `col` of the instance right before the
/// matching trim over to the trimmed instance, with the vertex ids of
/// `before` kept (removed vertices become uncolored).
///
/// First, clique vertices that use a pre-color are moved onto the matched
/// part of `C'`; this rests on a matching of the matched side that covers
/// the same pre-colors. Then any removed color still in use is swapped
/// with a color that only the removed vertices carried.
pub fn project_matching_trim(before: &Instance, step: &Step, col: &Coloring) -> Result<Coloring> {
    let Step::MatchingTrim { removed, colors, matching } = step else {
        return Err(Error::Usage("projection applies to the matching trim only".into()));
    };
    check_coloring(before, col).map_err(Error::InvalidColoring)?;
    let n = before.n();
    let num_colors = before.num_colors();
    let pre = BitSet::from_iter_with_capacity(num_colors, before.precoloring.iter().flatten().copied());
    let matched: Vec<usize> = matching.iter().map(|p| p.0).collect();
    let removed_set = BitSet::from_iter_with_capacity(n, removed.iter().copied());
    let mut lam: Vec<usize> = (0..n).map(|v| col.get(v).unwrap()).collect();

    // Clique vertices of C' that carry a pre-color.
    let c_prime: Vec<usize> = matched.iter().chain(removed).copied().collect();
    let c_pre: Vec<usize> = c_prime.iter().copied().filter(|&v| pre.contains(lam[v])).collect();
    if c_pre.iter().any(|v| removed_set.contains(*v)) {
        let targets: Vec<usize> = c_pre.iter().map(|&v| lam[v]).collect();
        let mut h = BipartiteGraph::new(matched.len(), targets.len());
        for (a, &v) in matched.iter().enumerate() {
            for (b, &c) in targets.iter().enumerate() {
                let blocked = before.graph.neighbors(v).iter().any(|u| before.precoloring[u] == Some(c));
                if !blocked {
                    h.add_edge(a, b);
                }
            }
        }
        let m = h.maximum_matching();
        if m.len() != targets.len() {
            return Err(Error::Internal("matched side cannot cover the pre-colors in use".into()));
        }
        let covered: Vec<usize> = m.pairs.iter().map(|&(a, _)| matched[a]).collect();
        let covered_set = BitSet::from_iter_with_capacity(n, covered.iter().copied());
        let c_pre_set = BitSet::from_iter_with_capacity(n, c_pre.iter().copied());
        let mut from: Vec<usize> = c_pre.iter().copied().filter(|v| !covered_set.contains(*v)).collect();
        let mut to: Vec<usize> = covered.iter().copied().filter(|v| !c_pre_set.contains(*v)).collect();
        from.sort_unstable();
        to.sort_unstable();
        let old = lam.clone();
        for &(a, b) in &m.pairs {
            lam[matched[a]] = targets[b];
        }
        for (&v, &w) in from.iter().zip(&to) {
            lam[v] = old[w];
        }
    }

    let gone = BitSet::from_iter_with_capacity(num_colors, colors.iter().copied());
    let mut b_colors: Vec<usize> = (0..n)
        .filter(|&v| !removed_set.contains(v) && gone.contains(lam[v]))
        .map(|v| lam[v])
        .collect();
    b_colors.sort_unstable();
    b_colors.dedup();
    let mut a_colors: Vec<usize> = removed.iter().map(|&v| lam[v]).filter(|&c| !gone.contains(c)).collect();
    a_colors.sort_unstable();
    if a_colors.len() < b_colors.len() {
        return Err(Error::Internal("too few colors on the removed vertices to swap with".into()));
    }
    let swap: Vec<(usize, usize)> = b_colors.iter().copied().zip(a_colors.iter().copied()).collect();
    let mut out = Coloring::empty(n);
    for v in (0..n).filter(|&v| !removed_set.contains(v)) {
        let c = lam[v];
        let c = swap
            .iter()
            .find_map(|&(x, y)| if c == x { Some(y) } else if c == y { Some(x) } else { None })
            .unwrap_or(c);
        out.set(v, c);
    }
    Ok(out)
}
