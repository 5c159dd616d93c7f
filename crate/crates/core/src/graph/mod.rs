//! Undirected simple graphs, bipartite graphs and matchings.
//!
//! Vertices are dense ids `0..n`. Every search breaks ties towards the
//! lowest index so results are reproducible.

mod bipartite;
mod modulator;

pub use bipartite::{find_deficient_set, BipartiteGraph, DeficientSet, Side};
pub use modulator::{approx_modulator, exact_modulator, min_modulator, verify_modulator};

use crate::bitset::BitSet;

/// A simple undirected graph stored as per-vertex neighbor bit sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<BitSet>,
}

/// A set of vertex-disjoint pairs.
///
/// For bipartite hosts a pair is `(left, right)`; for ordinary graphs it is
/// an edge `(u, v)` with `u < v`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// All endpoints of the matching, `V(M)`, as a set over `0..n`.
    /// Only meaningful for matchings of ordinary graphs.
    pub fn vertices(&self, n: usize) -> BitSet {
        BitSet::from_iter_with_capacity(n, self.pairs.iter().flat_map(|&(u, v)| [u, v]))
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BitSet::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds the edge `uv`. Self-loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut s = self.adj[v].complement();
                s.remove(v);
                s
            })
            .collect();
        Graph { adj }
    }

    /// The subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_independent_set(&self, s: &BitSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn is_clique(&self, s: &BitSet) -> bool {
        s.iter().all(|v| {
            let mut need = s.clone();
            need.remove(v);
            need.is_subset(&self.adj[v])
        })
    }

    /// Greedy maximal matching: scan vertices in index order and pair each
    /// unmatched vertex with its lowest-indexed unmatched neighbor.
    pub fn maximal_matching(&self) -> Matching {
        let n = self.n();
        let mut matched = BitSet::new(n);
        let mut pairs = Vec::new();
        for u in 0..n {
            if matched.contains(u) {
                continue;
            }
            if let Some(v) = self.adj[u].iter().find(|&v| !matched.contains(v)) {
                matched.insert(u);
                matched.insert(v);
                pairs.push((u.min(v), u.max(v)));
            }
        }
        Matching { pairs }
    }

    /// Checks that `m` is a matching of this graph with no edge of the graph
    /// left between two unmatched vertices.
    pub fn is_maximal_matching(&self, m: &Matching) -> bool {
        let n = self.n();
        let mut seen = BitSet::new(n);
        for &(u, v) in &m.pairs {
            if !self.has_edge(u, v) || !seen.insert(u) || !seen.insert(v) {
                return false;
            }
        }
        self.edges().all(|(u, v)| seen.contains(u) || seen.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_max_matching_size(g: &Graph) -> usize {
        let edges: Vec<_> = g.edges().collect();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let mut used = 0u64;
            let mut ok = true;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used >> u & 1 == 1 || used >> v & 1 == 1 {
                        ok = false;
                        break;
                    }
                    used |= 1 << u | 1 << v;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn complement_identities() {
        assert_eq!(Graph::complete(3).complement(), Graph::new(3));
        assert_eq!(Graph::new(2).complement(), Graph::complete(2));
    }

    #[test]
    fn complement_is_involution() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 0..=10 {
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            assert_eq!(g.complement().complement(), g);
        }
    }

    #[test]
    fn maximal_matching_examples() {
        assert!(Graph::new(4).maximal_matching().is_empty());
        assert_eq!(Graph::complete(2).maximal_matching().len(), 1);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let m = path.maximal_matching();
        assert_eq!(m.pairs, vec![(0, 1)]);
        // every maximal matching of P3 has one edge
        assert_eq!(brute_max_matching_size(&path), 1);
        assert!(path.is_maximal_matching(&m));
    }

    #[test]
    fn independent_set_examples() {
        let g = Graph::from_edges(3, &[(0, 1)]);
        assert!(g.is_independent_set(&BitSet::new(3)));
        assert!(g.is_independent_set(&BitSet::from_iter_with_capacity(3, [1])));
        assert!(!g.is_independent_set(&BitSet::from_iter_with_capacity(3, [0, 1])));
        assert!(g.is_independent_set(&BitSet::from_iter_with_capacity(3, [0, 2])));
    }

    #[test]
    fn greedy_matching_is_maximal_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(0..9);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        g.add_edge(u, v);
                    }
                }
            }
            let m = g.maximal_matching();
            assert!(g.is_maximal_matching(&m));
            assert!(2 * m.len() >= brute_max_matching_size(&g));
        }
    }
}
