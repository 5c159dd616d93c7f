//! Compression into budget-constrained list coloring, and a proper kernel,
//! for list coloring where every list has size `n - k`.
//!
//! Notation: `D` is the clique modulator from a maximal matching of the
//! complement, `C` the clique, `T` the union of all lists, `T_R` the rare
//! colors (on at most `6k` clique lists). `H*` has sides `C` and `D ∪ T_R`,
//! joining `c` to a non-neighbor `d` and to rare colors on its list. `X` is
//! read off a maximum matching `M` of `H*`; `T' = T \ (T_R \ X)`,
//! `V' = (D \ X) ∪ (C ∩ X)` and the budget is `q = |T'| - |C \ X|`.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{find_deficient_set, BipartiteGraph, Side};
use crate::instance::{Coloring, Instance, InstanceSpec, Tag};
use crate::oracle::check_coloring;

/// How the matched set `X` of `H*` is read.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum XReading {
    /// A König vertex cover built from `M`: one endpoint per matching edge.
    #[default]
    Cover,
    /// Both endpoints of every edge of `M`.
    Endpoints,
}

/// One application of the color Hall rule, in ids of the input instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColorHall {
    pub colors: Vec<usize>,
    pub removed: Vec<usize>,
    /// `(vertex, color)` pairs saturating `removed` within `colors`.
    pub matching: Vec<(usize, usize)>,
}

/// Right-hand vertex of `H*`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Partner {
    Vertex(usize),
    Color(usize),
}

/// The sets of the compression, over ids of the rule-reduced instance.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub modulator: BitSet,
    pub clique: BitSet,
    pub rare: BitSet,
    /// Maximum matching of `H*` as `(clique vertex, partner)`.
    pub matching: Vec<(usize, Partner)>,
    pub x_vertices: BitSet,
    pub x_colors: BitSet,
    pub t_prime: BitSet,
    pub v_prime: Vec<usize>,
    pub q: usize,
    /// The `q` universal colors kept when `T'` was trimmed.
    pub universal: Option<Vec<usize>>,
}

impl Analysis {
    /// Colors of `T_R \ X`.
    pub fn constrained(&self) -> BitSet {
        self.rare.difference(&self.x_colors)
    }

    pub fn x_len(&self) -> usize {
        self.x_vertices.len() + self.x_colors.len()
    }
}

#[derive(Clone, Debug)]
pub struct RlcState {
    pub original: Instance,
    pub hall: Vec<ColorHall>,
    /// The instance after the color Hall rule, renumbered.
    pub reduced: Instance,
    /// `keep[i]` is the original id of reduced vertex `i`.
    pub keep: Vec<usize>,
    /// Deficiency of `reduced`: lists have size `reduced.n() - k`.
    pub k: usize,
    /// `None` when the instance is small enough to be its own compression.
    pub analysis: Option<Analysis>,
}

#[derive(Clone, Debug)]
pub enum RlcOutcome {
    Yes,
    No,
    Budget { instance: Instance, state: RlcState },
}

fn check_input(inst: &Instance) -> Result<usize> {
    if inst.tag != Tag::Rlc {
        return Err(Error::Usage(format!("expected an RLC instance, got tag {}", inst.tag)));
    }
    if inst.precoloring.iter().any(Option::is_some) || inst.budget.is_some() {
        return Err(Error::Usage("regular list coloring takes neither pre-coloring nor budget".into()));
    }
    inst.k.ok_or_else(|| Error::Usage("RLC instance without `param k`".into()))
}

/// Applies the color Hall rule exhaustively: while some set of colors is
/// on fewer lists than its size, delete the vertices carrying those colors.
/// Returns the surviving vertices (ascending) and the applications.
pub fn rule_color_hall(inst: &Instance) -> (Vec<usize>, Vec<ColorHall>) {
    let mut alive = BitSet::full(inst.n());
    let mut steps = Vec::new();
    loop {
        let verts: Vec<usize> = alive.iter().collect();
        let mut present = BitSet::new(inst.num_colors());
        for &v in &verts {
            present.union_with(&inst.lists[v]);
        }
        let colors: Vec<usize> = present.iter().collect();
        let mut h = BipartiteGraph::new(verts.len(), colors.len());
        for (a, &v) in verts.iter().enumerate() {
            for (b, &c) in colors.iter().enumerate() {
                if inst.lists[v].contains(c) {
                    h.add_edge(a, b);
                }
            }
        }
        let Some(def) = find_deficient_set(&h, Side::Right) else {
            return (verts, steps);
        };
        let step = ColorHall {
            colors: def.set.iter().map(|b| colors[b]).collect(),
            removed: def.neighborhood.iter().map(|a| verts[a]).collect(),
            matching: def.matching.pairs.iter().map(|&(b, a)| (verts[a], colors[b])).collect(),
        };
        for &v in &step.removed {
            alive.remove(v);
        }
        steps.push(step);
    }
}

fn induced_spec(inst: &Instance, keep: &[usize]) -> InstanceSpec {
    let mut pos = vec![usize::MAX; inst.n()];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let mut spec = InstanceSpec::new(keep.len());
    spec.edges = inst
        .graph
        .edges()
        .filter(|&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
        .map(|(u, v)| (pos[u], pos[v]))
        .collect();
    spec.lists = keep.iter().map(|&v| inst.lists[v].iter().map(|c| inst.label(c)).collect()).collect();
    spec
}

/// Either the complement has a matching with `k` edges (the instance is a
/// YES instance) or the endpoints of a maximal one are a clique modulator
/// with at most `2(k - 1)` vertices.
pub fn rule_modulator_or_yes(inst: &Instance, k: usize) -> Option<BitSet> {
    let m = inst.graph.complement().maximal_matching();
    (m.len() < k).then(|| m.vertices(inst.n()))
}

/// Colors on at most `6k` lists of clique vertices.
pub fn classify_rare(inst: &Instance, clique: &BitSet, k: usize) -> BitSet {
    let mut count = vec![0usize; inst.num_colors()];
    for c in clique {
        for t in &inst.lists[c] {
            count[t] += 1;
        }
    }
    BitSet::from_iter_with_capacity(inst.num_colors(), (0..inst.num_colors()).filter(|&t| count[t] <= 6 * k))
}

/// Builds `H*`, a maximum matching of it and the set `X` under `reading`.
/// Returns `(matching, x_vertices, x_colors)`.
pub fn build_hstar_and_x(
    inst: &Instance,
    modulator: &BitSet,
    clique: &BitSet,
    rare: &BitSet,
    reading: XReading,
) -> (Vec<(usize, Partner)>, BitSet, BitSet) {
    let cs: Vec<usize> = clique.iter().collect();
    let right: Vec<Partner> = modulator.iter().map(Partner::Vertex).chain(rare.iter().map(Partner::Color)).collect();
    let mut h = BipartiteGraph::new(cs.len(), right.len());
    for (a, &c) in cs.iter().enumerate() {
        for (b, p) in right.iter().enumerate() {
            let edge = match *p {
                Partner::Vertex(d) => !inst.graph.has_edge(c, d),
                Partner::Color(t) => inst.lists[c].contains(t),
            };
            if edge {
                h.add_edge(a, b);
            }
        }
    }
    // Built from the `D ∪ T_R` side, so a matched rare color rather than its
    // clique partner lands in the cover when both would do.
    let (m, cover_r, cover_l) = h.transpose().konig_cover();
    let pairs: Vec<(usize, usize)> = m.pairs.iter().map(|&(b, a)| (a, b)).collect();
    let (xl, xr) = match reading {
        XReading::Cover => (cover_l, cover_r),
        XReading::Endpoints => (
            BitSet::from_iter_with_capacity(cs.len(), pairs.iter().map(|p| p.0)),
            BitSet::from_iter_with_capacity(right.len(), pairs.iter().map(|p| p.1)),
        ),
    };
    let mut xv = BitSet::new(inst.n());
    let mut xc = BitSet::new(inst.num_colors());
    for a in &xl {
        xv.insert(cs[a]);
    }
    for b in &xr {
        match right[b] {
            Partner::Vertex(d) => xv.insert(d),
            Partner::Color(t) => xc.insert(t),
        };
    }
    let matching = pairs.iter().map(|&(a, b)| (cs[a], right[b])).collect();
    (matching, xv, xc)
}

fn analyze(inst: &Instance, k: usize, modulator: BitSet, reading: XReading) -> Result<Option<Analysis>> {
    let n = inst.n();
    let clique = modulator.complement();
    let rare = classify_rare(inst, &clique, k);
    crate::ensure_internal!(rare.len() <= 3 * k, "{} rare colors exceed 3k = {}", rare.len(), 3 * k);
    let (matching, x_vertices, x_colors) = build_hstar_and_x(inst, &modulator, &clique, &rare, reading);
    let constrained = rare.difference(&x_colors);
    for c in clique.difference(&x_vertices).iter() {
        crate::ensure_internal!(
            inst.lists[c].is_disjoint(&constrained),
            "constrained rare color on the list of clique vertex {c} outside X"
        );
    }
    let t_prime = inst.palette().difference(&constrained);
    let c_in_x = clique.intersection(&x_vertices);
    let v_prime: Vec<usize> = modulator.difference(&x_vertices).union(&c_in_x).iter().collect();
    let outside = clique.len() - c_in_x.len();
    if t_prime.len() < outside {
        return Ok(None);
    }
    let q = t_prime.len() - outside;
    crate::ensure_internal!(c_in_x.len() <= 5 * k, "|C ∩ X| = {} exceeds 5k", c_in_x.len());
    crate::ensure_internal!(v_prime.len() <= 7 * k, "|V'| = {} exceeds 7k", v_prime.len());
    crate::ensure_internal!(q <= 7 * k, "q = {q} exceeds 7k");
    let universal = (t_prime.len() >= v_prime.len() * k + q).then(|| {
        let mut u = t_prime.clone();
        for &v in &v_prime {
            u.intersect_with(&inst.lists[v]);
        }
        u.iter().take(q).collect::<Vec<_>>()
    });
    if let Some(u) = &universal {
        crate::ensure_internal!(u.len() == q, "only {} universal colors for a budget of {q}", u.len());
    }
    debug_assert!(v_prime.iter().all(|&v| v < n));
    Ok(Some(Analysis { modulator, clique, rare, matching, x_vertices, x_colors, t_prime, v_prime, q, universal }))
}

/// Everything up to, but not including, building the output instance.
/// `Err` carries the definitive answer when a rule settles the instance.
fn prepare(inst: &Instance, reading: XReading) -> Result<std::result::Result<RlcState, bool>> {
    check_input(inst)?;
    let (keep, hall) = rule_color_hall(inst);
    let list = inst.lists.first().map_or(0, BitSet::len);
    if keep.len() <= list {
        // Every vertex has more list colors than neighbors.
        return Ok(Err(true));
    }
    let k = keep.len() - list;
    let mut spec = induced_spec(inst, &keep);
    spec.tag = Tag::Rlc;
    spec.k = Some(k);
    let reduced = spec.build()?;
    let Some(modulator) = rule_modulator_or_yes(&reduced, k) else {
        return Ok(Err(true));
    };
    let mut state = RlcState { original: inst.clone(), hall, reduced, keep, k, analysis: None };
    if state.reduced.n() < 11 * k {
        return Ok(Ok(state));
    }
    match analyze(&state.reduced, k, modulator, reading)? {
        None => Ok(Err(false)),
        Some(a) => {
            state.analysis = Some(a);
            Ok(Ok(state))
        }
    }
}

/// Compresses to a budget-constrained instance on at most `11k` vertices.
pub fn compress_rlc(inst: &Instance) -> Result<RlcOutcome> {
    compress_rlc_with(inst, XReading::Cover)
}

pub fn compress_rlc_with(inst: &Instance, reading: XReading) -> Result<RlcOutcome> {
    let state = match prepare(inst, reading)? {
        Err(true) => return Ok(RlcOutcome::Yes),
        Err(false) => return Ok(RlcOutcome::No),
        Ok(s) => s,
    };
    let r = &state.reduced;
    let k = state.k;
    let instance = match &state.analysis {
        None => {
            let mut spec = r.to_spec();
            spec.tag = Tag::Budget;
            spec.k = None;
            spec.budget = Some((r.num_colors(), r.colors.clone()));
            spec.build()?
        }
        Some(a) => {
            let mut spec = induced_spec(r, &a.v_prime);
            let labels = |s: &mut dyn Iterator<Item = usize>| s.map(|c| r.label(c)).collect::<Vec<_>>();
            let budget = match &a.universal {
                None => labels(&mut a.t_prime.iter()),
                Some(u) => {
                    let dropped = a.t_prime.difference(&BitSet::from_iter_with_capacity(r.num_colors(), u.iter().copied()));
                    for (i, &v) in a.v_prime.iter().enumerate() {
                        spec.lists[i] = labels(&mut r.lists[v].difference(&dropped).iter());
                    }
                    labels(&mut u.iter().copied())
                }
            };
            spec.tag = Tag::Budget;
            spec.budget = Some((a.q, budget));
            spec.build()?
        }
    };
    crate::ensure_internal!(instance.n() <= 11 * k, "compression kept {} vertices, k = {k}", instance.n());
    let colors = instance.palette().len();
    crate::ensure_internal!(colors <= 3 * k + 7 * k * (k + 1), "compression kept {colors} colors, k = {k}");
    Ok(RlcOutcome::Budget { instance, state })
}

/// Counts gathered while lifting, for auditing the budget argument.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct LiftReport {
    /// Distinct `T'` colors used by the given partial coloring.
    pub lambda0_t_prime: usize,
    /// Distinct `T'` colors on `C \ X` in the final coloring.
    pub rest_t_prime: usize,
    pub t_prime: usize,
}

/// Lifts a solution of the compressed instance to the input instance.
pub fn lift_rlc(state: &RlcState, compressed: &Instance, col: &Coloring) -> Result<(Coloring, LiftReport)> {
    check_coloring(compressed, col).map_err(Error::InvalidColoring)?;
    let r = &state.reduced;
    let scope: Vec<usize> = match &state.analysis {
        None => (0..r.n()).collect(),
        Some(a) => a.v_prime.clone(),
    };
    if scope.len() != compressed.n() {
        return Err(Error::Usage("coloring does not belong to this compression".into()));
    }
    let mut partial = Coloring::empty(r.n());
    for (i, &v) in scope.iter().enumerate() {
        let label = compressed.label(col.get(i).unwrap());
        let c = r.color_id(label).ok_or_else(|| Error::InvalidColoring(format!("color {label} unknown")))?;
        partial.set(v, c);
    }
    let (full, report) = match &state.analysis {
        None => (partial, LiftReport::default()),
        Some(a) => extend_partial(r, a, partial)?,
    };
    Ok((undo_hall(state, &full)?, report))
}

fn uses(col: &Coloring, num_colors: usize) -> Vec<usize> {
    let mut count = vec![0; num_colors];
    for c in col.0.iter().flatten() {
        count[*c] += 1;
    }
    count
}

/// Turns a coloring of `V'` with at most `q` colors of `T'` into a coloring
/// of the whole reduced instance, in four stages.
fn extend_partial(r: &Instance, a: &Analysis, mut col: Coloring) -> Result<(Coloring, LiftReport)> {
    let nc = r.num_colors();
    let mut report = LiftReport { t_prime: a.t_prime.len(), ..Default::default() };
    report.lambda0_t_prime = col.used(nc).intersection_len(&a.t_prime);
    crate::ensure_internal!(report.lambda0_t_prime <= a.q, "partial coloring exceeds the budget");

    // Stage 0: every constrained rare color gets used, via a matching of
    // those colors into vertices carrying them. Overwriting a vertex can free
    // another constrained color, so sweep until nothing changes; a vertex
    // holding its matched color is never touched again.
    let constrained: Vec<usize> = a.constrained().iter().collect();
    let mut h0 = BipartiteGraph::new(constrained.len(), r.n());
    for (i, &t) in constrained.iter().enumerate() {
        for v in 0..r.n() {
            if r.lists[v].contains(t) {
                h0.add_edge(i, v);
            }
        }
    }
    let m0 = h0.maximum_matching();
    crate::ensure_internal!(m0.len() == constrained.len(), "no matching saturates the constrained rare colors");
    let mut count = uses(&col, nc);
    loop {
        let mut changed = false;
        for &(i, v) in &m0.pairs {
            let t = constrained[i];
            if count[t] == 0 {
                crate::ensure_internal!(
                    a.modulator.contains(v) || a.x_vertices.contains(v),
                    "constrained color {t} matched into C \\ X"
                );
                if let Some(old) = col.get(v) {
                    count[old] -= 1;
                }
                col.set(v, t);
                count[t] += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Stage 1: unused rare colors of X go to their clique partners.
    for &(c, p) in &a.matching {
        let Partner::Color(t) = p else { continue };
        if !a.x_colors.contains(t) || count[t] > 0 {
            continue;
        }
        crate::ensure_internal!(
            !a.x_vertices.contains(c) && col.get(c).is_none(),
            "rare color {t} is matched to an assigned or covered vertex {c}"
        );
        col.set(c, t);
        count[t] += 1;
    }

    // Stage 2: uncolored modulator vertices share a fresh color with their
    // non-adjacent clique partner.
    for &(c, p) in &a.matching {
        let Partner::Vertex(d) = p else { continue };
        if col.get(d).is_some() {
            continue;
        }
        crate::ensure_internal!(
            a.x_vertices.contains(d) && !a.x_vertices.contains(c) && col.get(c).is_none(),
            "modulator vertex {d} has no free partner"
        );
        let shared = r.lists[c].intersection(&r.lists[d]);
        let t = shared.iter().find(|&t| count[t] == 0);
        let Some(t) = t else {
            return Err(Error::Internal(format!("no unused color shared by {d} and {c}")));
        };
        col.set(c, t);
        col.set(d, t);
        count[t] += 2;
    }
    crate::ensure_internal!(
        a.modulator.iter().all(|d| col.get(d).is_some()),
        "a modulator vertex is still uncolored"
    );

    // Stage 3: the rest of the clique takes distinct unused colors.
    let rest: Vec<usize> = a.clique.iter().filter(|&c| col.get(c).is_none()).collect();
    let free: Vec<usize> = (0..nc).filter(|&t| count[t] == 0).collect();
    let mut h = BipartiteGraph::new(rest.len(), free.len());
    for (i, &c) in rest.iter().enumerate() {
        for (j, &t) in free.iter().enumerate() {
            if r.lists[c].contains(t) {
                h.add_edge(i, j);
            }
        }
    }
    let m = h.maximum_matching();
    crate::ensure_internal!(m.len() == rest.len(), "{} of {} clique vertices left uncolored", rest.len() - m.len(), rest.len());
    for &(i, j) in &m.pairs {
        col.set(rest[i], free[j]);
    }
    let mut on_rest = BitSet::new(nc);
    for c in a.clique.difference(&a.x_vertices).iter() {
        on_rest.insert(col.get(c).unwrap());
    }
    report.rest_t_prime = on_rest.intersection_len(&a.t_prime);
    check_coloring(r, &col).map_err(|e| Error::Internal(format!("extended coloring is invalid: {e}")))?;
    Ok((col, report))
}

/// Colors of the reduced instance back to the input, restoring vertices
/// removed by the color Hall rule with their matched colors.
fn undo_hall(state: &RlcState, col: &Coloring) -> Result<Coloring> {
    let o = &state.original;
    let r = &state.reduced;
    let mut out = Coloring::empty(o.n());
    for (i, &v) in state.keep.iter().enumerate() {
        let c = col.get(i).ok_or_else(|| Error::Internal(format!("reduced vertex {i} uncolored")))?;
        out.set(v, o.color_id(r.label(c)).unwrap());
    }
    for step in state.hall.iter().rev() {
        for &(v, t) in &step.matching {
            out.set(v, t);
        }
    }
    check_coloring(o, &out).map_err(|e| Error::Internal(format!("lifted coloring is invalid: {e}")))?;
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KernelKind {
    /// A constant-size YES instance.
    Yes,
    /// A constant-size NO instance.
    No,
    /// The instance after the reduction rules, already small.
    Reduced,
    /// `G[V']` padded back to regular lists.
    Padded,
}

#[derive(Clone, Debug)]
pub struct RlcKernel {
    pub instance: Instance,
    pub kind: KernelKind,
    pub state: Option<RlcState>,
}

/// One vertex with a one-color list.
pub fn dummy_yes() -> Instance {
    let mut spec = InstanceSpec::new(1);
    spec.lists = vec![vec![1]];
    spec.tag = Tag::Rlc;
    spec.k = Some(0);
    spec.build().unwrap()
}

/// An edge whose ends share a single one-color list.
pub fn dummy_no() -> Instance {
    let mut spec = InstanceSpec::new(2);
    spec.edges = vec![(0, 1)];
    spec.lists = vec![vec![1]; 2];
    spec.tag = Tag::Rlc;
    spec.k = Some(1);
    spec.build().unwrap()
}

/// A regular-list kernel with `O(k^2)` vertices and colors.
///
/// When `T'` is large, the lists of `V'` are cut down to `(T_R \ X) ∪ U`
/// for `q` universal colors `U` and padded with novel colors; a clique of
/// novel vertices on exactly the novel colors, joined to every vertex,
/// keeps the novel colors off `V'`.
pub fn kernelize_rlc(inst: &Instance) -> Result<RlcKernel> {
    let state = match prepare(inst, XReading::Cover)? {
        Err(yes) => {
            let instance = if yes { dummy_yes() } else { dummy_no() };
            let kind = if yes { KernelKind::Yes } else { KernelKind::No };
            return Ok(RlcKernel { instance, kind, state: None });
        }
        Ok(s) => s,
    };
    let r = &state.reduced;
    let Some(Analysis { universal: Some(u), v_prime, .. }) = &state.analysis else {
        return Ok(RlcKernel { instance: r.clone(), kind: KernelKind::Reduced, state: Some(state) });
    };
    let a = state.analysis.as_ref().unwrap();
    let mut allowed = a.constrained();
    for &t in u {
        allowed.insert(t);
    }
    let s = allowed.len();
    let first_novel = r.colors.last().map_or(1, |&l| l + 1);
    let novel: Vec<u32> = (0..s as u32).map(|i| first_novel + i).collect();
    let nv = v_prime.len();
    let mut spec = induced_spec(r, v_prime);
    spec.n = nv + s;
    for (i, &v) in v_prime.iter().enumerate() {
        let mut l: Vec<u32> = r.lists[v].intersection(&allowed).iter().map(|c| r.label(c)).collect();
        let pad = s - l.len();
        l.extend(&novel[..pad]);
        spec.lists[i] = l;
    }
    spec.lists.extend(std::iter::repeat(novel.clone()).take(s));
    for x in nv..nv + s {
        for y in 0..x {
            spec.edges.push((y, x));
        }
    }
    spec.tag = Tag::Rlc;
    spec.k = Some(nv);
    let d_out: Vec<usize> = (0..nv).filter(|&i| a.modulator.contains(v_prime[i])).collect();
    spec.modulator = Some(d_out);
    let instance = spec.build()?;
    let k = state.k;
    crate::ensure_internal!(instance.n() <= 17 * k, "padded kernel has {} vertices, k = {k}", instance.n());
    crate::ensure_internal!(instance.num_colors() <= 20 * k, "padded kernel has {} colors, k = {k}", instance.num_colors());
    Ok(RlcKernel { instance, kind: KernelKind::Padded, state: Some(state) })
}

/// Lifts a solution of the kernel to the input instance.
pub fn lift_rlc_kernel(kernel: &RlcKernel, col: &Coloring) -> Result<Coloring> {
    check_coloring(&kernel.instance, col).map_err(Error::InvalidColoring)?;
    let Some(state) = &kernel.state else {
        return Err(Error::Usage("the kernel is a constant instance; nothing to lift".into()));
    };
    let r = &state.reduced;
    let to_reduced = |i: usize| -> Result<usize> {
        let label = kernel.instance.label(col.get(i).unwrap());
        r.color_id(label)
            .ok_or_else(|| Error::Internal(format!("novel color {label} on an original vertex")))
    };
    match kernel.kind {
        KernelKind::Reduced => {
            let full = Coloring((0..r.n()).map(|i| to_reduced(i).map(Some)).collect::<Result<_>>()?);
            undo_hall(state, &full)
        }
        KernelKind::Padded => {
            let a = state.analysis.as_ref().unwrap();
            let mut partial = Coloring::empty(r.n());
            for (i, &v) in a.v_prime.iter().enumerate() {
                partial.set(v, to_reduced(i)?);
            }
            let (full, _) = extend_partial(r, a, partial)?;
            undo_hall(state, &full)
        }
        KernelKind::Yes | KernelKind::No => unreachable!(),
    }
}
