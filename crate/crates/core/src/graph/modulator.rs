//! Clique modulators: sets `D` such that `G - D` is complete. These are
//! exactly the vertex covers of the complement graph.

use super::Graph;
use crate::bitset::BitSet;

/// Endpoints of a greedy maximal matching in the complement. Any vertex
/// cover of the complement must hit every matched edge, so the result is
/// at most twice the optimum.
pub fn approx_modulator(g: &Graph) -> BitSet {
    g.complement().maximal_matching().vertices(g.n())
}

/// A clique modulator with at most `k` vertices, if one exists.
///
/// Two-way branching on the lowest complement edge: one of its endpoints
/// must be deleted.
pub fn exact_modulator(g: &Graph, k: usize) -> Option<BitSet> {
    let comp = g.complement();
    let mut chosen = BitSet::new(g.n());
    branch(&comp, &mut chosen, k).then_some(chosen)
}

fn branch(comp: &Graph, chosen: &mut BitSet, budget: usize) -> bool {
    let edge = (0..comp.n())
        .filter(|&u| !chosen.contains(u))
        .find_map(|u| comp.neighbors(u).iter().find(|&v| !chosen.contains(v)).map(|v| (u, v)));
    let Some((u, v)) = edge else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for w in [u, v] {
        chosen.insert(w);
        if branch(comp, chosen, budget - 1) {
            return true;
        }
        chosen.remove(w);
    }
    false
}

/// A minimum clique modulator.
pub fn min_modulator(g: &Graph) -> BitSet {
    (0..=g.n())
        .find_map(|k| exact_modulator(g, k))
        .expect("deleting all vertices always leaves a clique")
}

pub fn verify_modulator(g: &Graph, d: &BitSet) -> bool {
    g.is_clique(&d.resized(g.n()).complement())
}
