use std::collections::VecDeque;

use super::Matching;
use crate::bitset::BitSet;

/// A bipartite graph with sides `0..left` and `0..right`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<BitSet>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// A Hall violator `S` together with the witness that the proofs consume:
/// a matching that saturates `N(S)` using partners inside `S`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeficientSet {
    pub set: BitSet,
    pub neighborhood: BitSet,
    /// Pairs `(s, t)` with `s` in `set` and `t` in `neighborhood`; every
    /// vertex of `neighborhood` occurs exactly once.
    pub matching: Matching,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            right,
            adj: vec![BitSet::new(right); left],
        }
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        self.adj[l].insert(r);
    }

    #[inline]
    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adj[l].contains(r)
    }

    pub fn neighbors(&self, l: usize) -> &BitSet {
        &self.adj[l]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum()
    }

    pub fn transpose(&self) -> BipartiteGraph {
        let mut t = BipartiteGraph::new(self.right, self.left());
        for (l, nb) in self.adj.iter().enumerate() {
            for r in nb {
                t.add_edge(r, l);
            }
        }
        t
    }

    /// Union of the neighborhoods of a set of left vertices.
    pub fn neighborhood(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.right);
        for l in set {
            out.union_with(&self.adj[l]);
        }
        out
    }

    /// Maximum-cardinality matching by augmenting paths, trying left
    /// vertices and their neighbors in index order.
    pub fn maximum_matching(&self) -> Matching {
        let (mate_l, _) = self.mates();
        Matching {
            pairs: mate_l
                .iter()
                .enumerate()
                .filter_map(|(l, r)| r.map(|r| (l, r)))
                .collect(),
        }
    }

    /// Maximum matching as mate arrays for both sides.
    pub fn mates(&self) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut mate_l = vec![None; self.left()];
        let mut mate_r = vec![None; self.right];
        let mut seen = BitSet::new(self.right);
        for l in 0..self.left() {
            seen.clear();
            self.augment(l, &mut mate_l, &mut mate_r, &mut seen);
        }
        (mate_l, mate_r)
    }

    fn augment(
        &self,
        l: usize,
        mate_l: &mut [Option<usize>],
        mate_r: &mut [Option<usize>],
        seen: &mut BitSet,
    ) -> bool {
        for r in &self.adj[l] {
            if !seen.insert(r) {
                continue;
            }
            let free = match mate_r[r] {
                None => true,
                Some(other) => self.augment(other, mate_l, mate_r, seen),
            };
            if free {
                mate_l[l] = Some(r);
                mate_r[r] = Some(l);
                return true;
            }
        }
        false
    }

    /// König cover from a maximum matching: left vertices not reachable by
    /// alternating paths from free left vertices, plus right vertices that
    /// are. Each matching edge has exactly one endpoint in the cover.
    pub fn konig_cover(&self) -> (Matching, BitSet, BitSet) {
        let (mate_l, mate_r) = self.mates();
        let mut reach_l = BitSet::new(self.left());
        let mut reach_r = BitSet::new(self.right);
        let mut queue: VecDeque<usize> = (0..self.left()).filter(|&l| mate_l[l].is_none()).collect();
        for &l in &queue {
            reach_l.insert(l);
        }
        while let Some(l) = queue.pop_front() {
            for r in &self.adj[l] {
                if reach_r.insert(r) {
                    if let Some(m) = mate_r[r] {
                        if reach_l.insert(m) {
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        let pairs = mate_l.iter().enumerate().filter_map(|(l, r)| r.map(|r| (l, r))).collect();
        (Matching { pairs }, reach_l.complement(), reach_r)
    }

    /// Checks that `m` is a matching of this graph.
    pub fn is_matching(&self, m: &Matching) -> bool {
        let mut ls = BitSet::new(self.left());
        let mut rs = BitSet::new(self.right);
        m.pairs
            .iter()
            .all(|&(l, r)| l < self.left() && r < self.right && self.has_edge(l, r) && ls.insert(l) && rs.insert(r))
    }
}

/// Finds a set `S` on `side` with `|N(S)| < |S|`, or `None` when a maximum
/// matching saturates that side.
///
/// `S` is the set of side vertices reachable by alternating paths from the
/// lowest-indexed unsaturated vertex; the maximum matching restricted to
/// `N(S)` then saturates `N(S)` with partners in `S`.
pub fn find_deficient_set(h: &BipartiteGraph, side: Side) -> Option<DeficientSet> {
    let owned;
    let g = match side {
        Side::Left => h,
        Side::Right => {
            owned = h.transpose();
            &owned
        }
    };
    let (mate_l, mate_r) = g.mates();
    let start = mate_l.iter().position(Option::is_none)?;

    let mut set = BitSet::new(g.left());
    let mut nbr = BitSet::new(g.right());
    let mut queue = VecDeque::from([start]);
    set.insert(start);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if !nbr.insert(y) {
                continue;
            }
            let partner = mate_r[y].expect("alternating reachability hit a free vertex in a maximum matching");
            if set.insert(partner) {
                queue.push_back(partner);
            }
        }
    }
    let pairs = nbr.iter().map(|y| (mate_r[y].unwrap(), y)).collect();
    Some(DeficientSet {
        set,
        neighborhood: nbr,
        matching: Matching { pairs },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_bipartite(rng: &mut impl Rng, l: usize, r: usize, p: f64) -> BipartiteGraph {
        let mut h = BipartiteGraph::new(l, r);
        for a in 0..l {
            for b in 0..r {
                if rng.gen_bool(p) {
                    h.add_edge(a, b);
                }
            }
        }
        h
    }

    #[test]
    fn konig_cover_is_minimum() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let (l, r) = (rng.gen_range(0..7), rng.gen_range(0..7));
            let p = rng.gen_range(0.1..0.7);
            let h = random_bipartite(&mut rng, l, r, p);
            let (m, cl, cr) = h.konig_cover();
            assert_eq!(cl.len() + cr.len(), m.len());
            for a in 0..l {
                for b in h.neighbors(a) {
                    assert!(cl.contains(a) || cr.contains(b));
                }
            }
            for &(a, b) in &m.pairs {
                assert!(cl.contains(a) != cr.contains(b));
            }
        }
    }

    /// Largest matching by trying every injective assignment, recursively.
    fn brute_max(h: &BipartiteGraph, l: usize, used: u64) -> usize {
        if l == h.left() {
            return 0;
        }
        let mut best = brute_max(h, l + 1, used);
        for r in h.neighbors(l) {
            if used >> r & 1 == 0 {
                best = best.max(1 + brute_max(h, l + 1, used | 1 << r));
            }
        }
        best
    }

    /// Whether some matching covers every right vertex in `target`.
    fn covers(h: &BipartiteGraph, lefts: &[usize], target: u64) -> bool {
        fn go(h: &BipartiteGraph, lefts: &[usize], i: usize, covered: u64, target: u64) -> bool {
            if covered & target == target {
                return true;
            }
            if i == lefts.len() {
                return false;
            }
            if go(h, lefts, i + 1, covered, target) {
                return true;
            }
            h.neighbors(lefts[i])
                .iter()
                .any(|r| covered >> r & 1 == 0 && target >> r & 1 == 1 && go(h, lefts, i + 1, covered | 1 << r, target))
        }
        go(h, lefts, 0, 0, target)
    }

    #[test]
    fn matching_examples() {
        let mut k22 = BipartiteGraph::new(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                k22.add_edge(a, b);
            }
        }
        assert_eq!(k22.maximum_matching().len(), 2);
        assert!(find_deficient_set(&k22, Side::Left).is_none());

        let mut pinch = BipartiteGraph::new(2, 1);
        pinch.add_edge(0, 0);
        pinch.add_edge(1, 0);
        assert_eq!(pinch.maximum_matching().len(), 1);
        let d = find_deficient_set(&pinch, Side::Left).unwrap();
        assert_eq!(d.set.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(d.neighborhood.iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn maximum_matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let p = rng.gen_range(0.1..0.7);
            let h = random_bipartite(&mut rng, 6, 6, p);
            let m = h.maximum_matching();
            assert!(h.is_matching(&m));
            assert_eq!(m.len(), brute_max(&h, 0, 0));
        }
    }

    #[test]
    fn deficient_set_predicate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let p = rng.gen_range(0.05..0.6);
            let h = random_bipartite(&mut rng, 6, 6, p);
            for side in [Side::Left, Side::Right] {
                let host = if side == Side::Left { h.clone() } else { h.transpose() };
                let saturable = host.maximum_matching().len() == host.left();
                match find_deficient_set(&h, side) {
                    None => assert!(saturable),
                    Some(d) => {
                        assert!(!saturable);
                        assert_eq!(host.neighborhood(&d.set), d.neighborhood);
                        assert!(d.neighborhood.len() < d.set.len());
                        assert_eq!(d.matching.len(), d.neighborhood.len());
                        assert!(host.is_matching(&d.matching));
                        assert!(d.matching.pairs.iter().all(|&(s, t)| d.set.contains(s) && d.neighborhood.contains(t)));
                    }
                }
            }
        }
    }

    // For every Y' on the right side, a matching covering Y' exists in H iff
    // one exists in H restricted to the left endpoints of a maximum matching.
    #[test]
    fn restriction_to_matched_left_preserves_coverability() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..150 {
            let l = rng.gen_range(1..=7);
            let r = rng.gen_range(1..=7);
            let p = rng.gen_range(0.1..0.6);
            let h = random_bipartite(&mut rng, l, r, p);
            let all: Vec<usize> = (0..l).collect();
            let matched: Vec<usize> = h.maximum_matching().pairs.iter().map(|p| p.0).collect();
            for target in 0u64..(1 << r) {
                assert_eq!(covers(&h, &all, target), covers(&h, &matched, target));
            }
        }
    }
}
