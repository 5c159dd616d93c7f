//! Seeded instance generators, including the two hardness reductions.

use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Instance, InstanceSpec, Tag};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_at;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ListModel {
    /// Every list is a random `s`-subset of the palette.
    Uniform(usize),
    /// Every list is a random `(n - k)`-subset of the palette.
    Regular(usize),
    /// A proper coloring is sampled first; each list holds its planted
    /// color plus `extra` random others.
    Planted { extra: usize },
}

#[derive(Clone, Debug)]
pub struct RandomParams {
    pub n: usize,
    pub density: f64,
    /// When set, a random set of this many vertices becomes the modulator
    /// and the rest a clique; `density` then applies to pairs touching it.
    pub modulator: Option<usize>,
    pub lists: ListModel,
    pub palette: usize,
    pub tag: Tag,
}

/// Graph on `n` vertices; returns it with the modulator (if any), sorted.
fn modulated_graph(rng: &mut ChaCha8Rng, n: usize, k: Option<usize>, density: f64) -> (Graph, Option<Vec<usize>>) {
    let mut g = Graph::new(n);
    let d = k.map(|k| {
        let mut d = (0..n).choose_multiple(rng, k.min(n));
        d.sort_unstable();
        d
    });
    let in_d = |v: usize| d.as_ref().map_or(true, |d| d.binary_search(&v).is_ok());
    for u in 0..n {
        for v in u + 1..n {
            let forced = d.is_some() && !in_d(u) && !in_d(v);
            if forced || rng.gen_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    (g, d)
}

/// Greedy random proper coloring from `1..=palette`; vertices with no free
/// color get fresh labels above the palette.
fn plant(rng: &mut ChaCha8Rng, g: &Graph, palette: usize) -> Vec<u32> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut col = vec![0u32; n];
    let mut fresh = palette as u32;
    for &v in &order {
        let taken: Vec<u32> = g.neighbors(v).iter().map(|u| col[u]).filter(|&c| c != 0).collect();
        let free = (1..=palette as u32).filter(|c| !taken.contains(c)).choose(rng);
        col[v] = free.unwrap_or_else(|| {
            fresh += 1;
            fresh
        });
    }
    col
}

fn random_list(rng: &mut ChaCha8Rng, palette: usize, size: usize) -> Vec<u32> {
    let mut l = (1..=palette as u32).choose_multiple(rng, size.min(palette));
    l.sort_unstable();
    l
}

pub fn gen_random(p: &RandomParams, seed: u64) -> Instance {
    let mut rng = rng_at(seed, &[0x72616e64]);
    let (g, d) = modulated_graph(&mut rng, p.n, p.modulator, p.density);
    let mut spec = InstanceSpec::new(p.n);
    spec.edges = g.edges().collect();
    spec.modulator = d;
    spec.tag = p.tag;
    match p.lists {
        ListModel::Uniform(s) => {
            for v in 0..p.n {
                spec.lists[v] = random_list(&mut rng, p.palette, s);
            }
        }
        ListModel::Regular(k) => {
            let size = p.n.saturating_sub(k);
            for v in 0..p.n {
                spec.lists[v] = random_list(&mut rng, p.palette.max(size), size);
            }
            spec.k = Some(k.min(p.n));
        }
        ListModel::Planted { extra } => {
            let col = plant(&mut rng, &g, p.palette);
            for v in 0..p.n {
                let mut l = random_list(&mut rng, p.palette, extra);
                l.push(col[v]);
                l.sort_unstable();
                l.dedup();
                spec.lists[v] = l;
            }
        }
    }
    spec.build().expect("generator produced an invalid instance")
}

#[derive(Clone, Debug)]
pub struct PceParams {
    pub n: usize,
    /// Modulator size.
    pub k: usize,
    pub density: f64,
    /// `|Q|`.
    pub palette: usize,
    pub precolor_prob: f64,
    /// Take the pre-coloring from a sampled proper coloring.
    pub planted: bool,
}

/// Pre-colors vertices with probability `prob`, using `col` where given
/// and otherwise a random color not on a pre-colored neighbor.
fn precolor(rng: &mut ChaCha8Rng, g: &Graph, palette: usize, prob: f64, planted: Option<&[u32]>) -> Vec<(usize, u32)> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut col = vec![0u32; n];
    for &v in &order {
        if !rng.gen_bool(prob) {
            continue;
        }
        let taken: Vec<u32> = g.neighbors(v).iter().map(|u| col[u]).filter(|&c| c != 0).collect();
        let c = match planted {
            Some(p) => Some(p[v]).filter(|&c| c as usize <= palette && !taken.contains(&c)),
            None => (1..=palette as u32).filter(|c| !taken.contains(c)).choose(rng),
        };
        if let Some(c) = c {
            col[v] = c;
        }
    }
    (0..n).filter(|&v| col[v] != 0).map(|v| (v, col[v])).collect()
}

pub fn gen_pce(p: &PceParams, seed: u64) -> Instance {
    let mut rng = rng_at(seed, &[0x706365]);
    let (g, d) = modulated_graph(&mut rng, p.n, Some(p.k), p.density);
    let planted = p.planted.then(|| plant(&mut rng, &g, p.palette));
    let mut spec = InstanceSpec::new(p.n);
    spec.edges = g.edges().collect();
    spec.modulator = d;
    spec.tag = Tag::Pcecm;
    spec.lists = vec![(1..=p.palette as u32).collect(); p.n];
    spec.precoloring = precolor(&mut rng, &g, p.palette, p.precolor_prob, planted.as_deref());
    spec.build().expect("generator produced an invalid instance")
}

#[derive(Clone, Debug)]
pub struct SaveParams {
    pub n: usize,
    pub density: f64,
    pub palette: usize,
    pub precolor_prob: f64,
}

pub fn gen_save(p: &SaveParams, seed: u64) -> Instance {
    let mut rng = rng_at(seed, &[0x73617665]);
    let (g, _) = modulated_graph(&mut rng, p.n, None, p.density);
    let mut spec = InstanceSpec::new(p.n);
    spec.edges = g.edges().collect();
    spec.tag = Tag::Save;
    spec.lists = vec![(1..=p.palette as u32).collect(); p.n];
    spec.precoloring = precolor(&mut rng, &g, p.palette, p.precolor_prob, None);
    spec.build().expect("generator produced an invalid instance")
}

#[derive(Clone, Debug)]
pub struct RlcParams {
    pub n: usize,
    pub k: usize,
    /// `|T|`, between `n - k` and `n` for instances the color rule keeps.
    pub palette: usize,
    /// Colors `1..=hot` are the ones lists tend to miss.
    pub hot: usize,
    /// Probability that a missed color is drawn from the hot ones.
    pub hot_bias: f64,
    /// Number of vertices from which complement edges fan out. With fewer
    /// than `k` centers the complement has no matching of size `k`.
    pub stars: usize,
    pub star_size: usize,
}

/// A near-complete graph with `(n-k)`-regular lists over `1..=palette`.
/// Each list misses `palette - (n - k)` colors, biased towards the hot
/// ones, which makes those colors rare on the clique.
pub fn gen_rlc(p: &RlcParams, seed: u64) -> Instance {
    let mut rng = rng_at(seed, &[0x726c63]);
    let n = p.n;
    let size = n.saturating_sub(p.k);
    let palette = p.palette.max(size);
    let mut g = Graph::complete(n);
    for center in (0..n).choose_multiple(&mut rng, p.stars.min(n)) {
        for leaf in (0..n).filter(|&v| v != center).choose_multiple(&mut rng, p.star_size) {
            g.remove_edge(center, leaf);
        }
    }
    let hot = p.hot.min(palette);
    let lists = (0..n)
        .map(|_| {
            let mut missing = std::collections::BTreeSet::new();
            while missing.len() < palette - size {
                let c = if hot > 0 && rng.gen_bool(p.hot_bias) {
                    rng.gen_range(1..=hot)
                } else {
                    rng.gen_range(1..=palette)
                };
                missing.insert(c as u32);
            }
            (1..=palette as u32).filter(|c| !missing.contains(c)).collect()
        })
        .collect();
    let mut spec = InstanceSpec::new(n);
    spec.edges = g.edges().collect();
    spec.lists = lists;
    spec.tag = Tag::Rlc;
    spec.k = Some(p.k.min(n));
    spec.build().expect("generator produced an invalid instance")
}

/// Hitting set (`universe 1..=n`, family `F`, size `k`) as list coloring:
/// one independent vertex per set with the set as its list, joined to a
/// clique of `n - k` vertices whose lists are the whole universe.
pub fn gen_from_hitting_set(n: usize, family: &[Vec<u32>], k: usize) -> Result<Instance> {
    if k > n {
        return Err(Error::Invalid(format!("hitting-set budget k = {k} exceeds universe size {n}")));
    }
    if let Some(f) = family.iter().find(|f| f.is_empty() || f.iter().any(|&e| e == 0 || e as usize > n)) {
        return Err(Error::Invalid(format!("set {f:?} is empty or leaves the universe 1..={n}")));
    }
    let m = family.len();
    let c = n - k;
    let mut spec = InstanceSpec::new(m + c);
    for (i, f) in family.iter().enumerate() {
        spec.lists[i] = f.clone();
    }
    for v in m..m + c {
        spec.lists[v] = (1..=n as u32).collect();
        for u in 0..v {
            spec.edges.push((u, v));
        }
    }
    spec.modulator = Some((0..m).collect());
    spec.build()
}

/// Independent set of size `k` in `g` as budget-constrained list coloring.
///
/// Vertex `i` gets its private color `i + 1` and the shared color `n + 1`.
/// An independent set of size `k` takes the shared color and saves `k - 1`
/// colors, so the budget is `q = n - (k - 1)` over all colors.
pub fn gen_from_independent_set(g: &Graph, k: usize) -> Result<Instance> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::Invalid(format!("independent-set size k = {k} must lie in 1..={n}")));
    }
    let shared = n as u32 + 1;
    let mut spec = InstanceSpec::new(n);
    spec.edges = g.edges().collect();
    spec.lists = (0..n).map(|i| vec![i as u32 + 1, shared]).collect();
    spec.budget = Some((n - (k - 1), (1..=shared).collect()));
    spec.tag = Tag::Budget;
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_deterministic() {
        let p = RandomParams {
            n: 0,
            density: 0.5,
            modulator: Some(0),
            lists: ListModel::Uniform(2),
            palette: 3,
            tag: Tag::Lccm,
        };
        assert_eq!(gen_random(&p, 1).n(), 0);
        let p = RandomParams { n: 9, modulator: Some(3), ..p };
        assert_eq!(gen_random(&p, 5), gen_random(&p, 5));
        assert_ne!(gen_random(&p, 5), gen_random(&p, 6));
    }

    #[test]
    fn regular_lists_have_size_n_minus_k() {
        let p = RandomParams {
            n: 8,
            density: 0.5,
            modulator: None,
            lists: ListModel::Regular(2),
            palette: 9,
            tag: Tag::Rlc,
        };
        let inst = gen_random(&p, 3);
        assert!(inst.lists.iter().all(|l| l.len() == 6));
        let r = gen_rlc(
            &RlcParams { n: 24, k: 2, palette: 24, hot: 4, hot_bias: 0.8, stars: 1, star_size: 3 },
            4,
        );
        assert!(r.lists.iter().all(|l| l.len() == 22));
    }

    #[test]
    fn hitting_set_shape() {
        let inst = gen_from_hitting_set(2, &[vec![1], vec![2]], 1).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.graph.edge_count(), 2);
        assert!(gen_from_hitting_set(2, &[vec![1]], 3).is_err());
        let all = gen_from_hitting_set(3, &[vec![1, 2]], 3).unwrap();
        assert_eq!(all.n(), 1);
    }

    #[test]
    fn independent_set_shape() {
        let inst = gen_from_independent_set(&Graph::complete(2), 1).unwrap();
        assert_eq!(inst.budget.as_ref().unwrap().q, 2);
        assert_eq!(inst.num_colors(), 3);
        assert!(gen_from_independent_set(&Graph::new(0), 1).is_err());
    }
}
