//! Brute-force ground truth. These solvers favor obviousness over speed and
//! share no code with the algebraic solvers or the kernels.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::instance::{Coloring, Instance};

pub const DEFAULT_VERTEX_CAP: usize = 14;
pub const DEFAULT_ENUM_CAP: u64 = 1 << 22;

/// Why a coloring fails, or `Ok` when it is a solution.
pub fn check_coloring(inst: &Instance, col: &Coloring) -> std::result::Result<(), String> {
    if col.len() != inst.n() {
        return Err(format!("coloring covers {} vertices, instance has {}", col.len(), inst.n()));
    }
    for v in 0..inst.n() {
        let Some(c) = col.get(v) else {
            return Err(format!("vertex {v} is uncolored"));
        };
        if !inst.lists[v].contains(c) {
            return Err(format!("vertex {v} has color {} outside its list", inst.label(c)));
        }
        if inst.precoloring[v].is_some_and(|p| p != c) {
            return Err(format!("vertex {v} disagrees with its pre-coloring"));
        }
        if let Some(u) = inst.graph.neighbors(v).iter().find(|&u| col.get(u) == Some(c)) {
            return Err(format!("edge {}-{} is monochromatic", v.min(u), v.max(u)));
        }
    }
    if let Some(b) = &inst.budget {
        let used = col.used(inst.num_colors()).intersection_len(&b.colors);
        if used > b.q {
            return Err(format!("{used} budget colors used, at most {} allowed", b.q));
        }
    }
    Ok(())
}

pub fn verify_coloring(inst: &Instance, col: &Coloring) -> bool {
    check_coloring(inst, col).is_ok()
}

/// Exhaustive search for a list coloring that respects the pre-coloring.
/// Any budget constraint is ignored; see [`brute_budget`].
pub fn brute_backtrack(inst: &Instance) -> Result<Option<Coloring>> {
    brute_backtrack_capped(inst, DEFAULT_VERTEX_CAP)
}

pub fn brute_backtrack_capped(inst: &Instance, cap: usize) -> Result<Option<Coloring>> {
    Search::new(inst, cap, None)?.run()
}

/// Exhaustive search honoring the budget constraint as well.
pub fn brute_budget(inst: &Instance) -> Result<Option<Coloring>> {
    brute_budget_capped(inst, DEFAULT_VERTEX_CAP)
}

pub fn brute_budget_capped(inst: &Instance, cap: usize) -> Result<Option<Coloring>> {
    let budget = inst.budget.as_ref().map(|b| (b.colors.clone(), b.q));
    Search::new(inst, cap, budget)?.run()
}

struct Search<'a> {
    inst: &'a Instance,
    order: Vec<usize>,
    col: Vec<Option<usize>>,
    budget: Option<(BitSet, usize)>,
    used_budget: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, cap: usize, budget: Option<(BitSet, usize)>) -> Result<Self> {
        if inst.n() > cap {
            return Err(Error::Capacity { what: "oracle vertex count", limit: cap, got: inst.n() });
        }
        let mut order: Vec<usize> = (0..inst.n()).collect();
        order.sort_by_key(|&v| (inst.precoloring[v].is_none(), std::cmp::Reverse(inst.graph.degree(v)), v));
        Ok(Search {
            inst,
            order,
            col: vec![None; inst.n()],
            budget,
            used_budget: vec![0; inst.num_colors()],
        })
    }

    fn run(mut self) -> Result<Option<Coloring>> {
        Ok(self.go(0).then(|| Coloring(self.col)))
    }

    fn budget_full(&self) -> bool {
        self.budget
            .as_ref()
            .is_some_and(|(_, q)| self.used_budget.iter().filter(|&&x| x > 0).count() >= *q)
    }

    /// Colors still open to an uncolored vertex.
    fn available(&self, v: usize) -> BitSet {
        let mut a = match self.inst.precoloring[v] {
            Some(c) => BitSet::from_iter_with_capacity(self.inst.num_colors(), [c]),
            None => self.inst.lists[v].clone(),
        };
        for u in self.inst.graph.neighbors(v) {
            if let Some(c) = self.col[u] {
                a.remove(c);
            }
        }
        if let Some((t, _)) = &self.budget {
            if self.budget_full() {
                for c in t {
                    if self.used_budget[c] == 0 {
                        a.remove(c);
                    }
                }
            }
        }
        a
    }

    /// Every uncolored vertex keeps an option, and greedily grown cliques of
    /// uncolored vertices can be matched into their open colors.
    fn feasible(&self) -> bool {
        let g = &self.inst.graph;
        let open: Vec<usize> = self.order.iter().copied().filter(|&v| self.col[v].is_none()).collect();
        let avail: Vec<BitSet> = (0..self.inst.n())
            .map(|v| if self.col[v].is_none() { self.available(v) } else { BitSet::new(0) })
            .collect();
        if open.iter().any(|&v| avail[v].is_empty()) {
            return false;
        }
        let mut placed = BitSet::new(self.inst.n());
        for &seed in &open {
            if placed.contains(seed) {
                continue;
            }
            let mut clique = vec![seed];
            for &v in &open {
                if v != seed && !placed.contains(v) && clique.iter().all(|&u| g.has_edge(u, v)) {
                    clique.push(v);
                }
            }
            for &v in &clique {
                placed.insert(v);
            }
            if clique.len() < 2 {
                continue;
            }
            let mut h = BipartiteGraph::new(clique.len(), self.inst.num_colors());
            for (i, &v) in clique.iter().enumerate() {
                for c in &avail[v] {
                    h.add_edge(i, c);
                }
            }
            if h.maximum_matching().len() < clique.len() {
                return false;
            }
        }
        true
    }

    fn go(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        for c in &self.available(v) {
            self.col[v] = Some(c);
            self.used_budget[c] += 1;
            if self.feasible() && self.go(i + 1) {
                return true;
            }
            self.used_budget[c] -= 1;
            self.col[v] = None;
        }
        false
    }
}

/// Enumerates list colorings of the modulator and completes each by a
/// matching of the clique into the colors its vertices may still take.
pub fn brute_modulator_enum(inst: &Instance) -> Result<Option<Coloring>> {
    brute_modulator_enum_capped(inst, DEFAULT_ENUM_CAP)
}

pub fn brute_modulator_enum_capped(inst: &Instance, cap: u64) -> Result<Option<Coloring>> {
    let d_set = inst.modulator.as_ref().ok_or(Error::MissingModulator)?;
    if inst.budget.is_some() {
        return Err(Error::Usage("modulator enumeration does not handle budgets".into()));
    }
    let choices = |v: usize| match inst.precoloring[v] {
        Some(c) => vec![c],
        None => inst.lists[v].iter().collect(),
    };
    let d: Vec<usize> = d_set.iter().collect();
    let c: Vec<usize> = (0..inst.n()).filter(|v| !d_set.contains(*v)).collect();
    let total = d
        .iter()
        .try_fold(1u64, |acc, &v| acc.checked_mul(choices(v).len().max(1) as u64))
        .unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::Capacity { what: "modulator colorings", limit: cap as usize, got: total.min(usize::MAX as u64) as usize });
    }
    let options: Vec<Vec<usize>> = d.iter().map(|&v| choices(v)).collect();
    let mut col = Coloring::empty(inst.n());
    Ok(enum_d(inst, &d, &c, &options, 0, &mut col).then_some(col))
}

fn enum_d(inst: &Instance, d: &[usize], c: &[usize], options: &[Vec<usize>], i: usize, col: &mut Coloring) -> bool {
    if i == d.len() {
        return complete_clique(inst, c, col);
    }
    let v = d[i];
    for &x in &options[i] {
        if d[..i].iter().any(|&u| inst.graph.has_edge(u, v) && col.get(u) == Some(x)) {
            continue;
        }
        col.set(v, x);
        if enum_d(inst, d, c, options, i + 1, col) {
            return true;
        }
    }
    col.0[v] = None;
    false
}

fn complete_clique(inst: &Instance, c: &[usize], col: &mut Coloring) -> bool {
    let mut h = BipartiteGraph::new(c.len(), inst.num_colors());
    for (i, &v) in c.iter().enumerate() {
        let allowed = match inst.precoloring[v] {
            Some(p) => vec![p],
            None => inst.lists[v].iter().collect(),
        };
        for x in allowed {
            if !inst.graph.neighbors(v).iter().any(|u| col.get(u) == Some(x)) {
                h.add_edge(i, x);
            }
        }
    }
    let m = h.maximum_matching();
    if m.len() < c.len() {
        return false;
    }
    for (i, x) in m.pairs {
        col.set(c[i], x);
    }
    true
}
