use listcolor::graph::Graph;
use listcolor::instance::{gen_from_hitting_set, gen_from_independent_set};
use listcolor::oracle::{brute_backtrack, brute_budget, brute_modulator_enum};

fn subsets(mask: u32, n: usize) -> Vec<u32> {
    (0..n as u32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

#[test]
fn hitting_set_small_universes() {
    for n in 1..=4usize {
        let sets = 1u32 << n;
        // Every family of up to three distinct non-empty sets.
        for a in 1..sets {
            for b in a..sets {
                for c in b..sets {
                    let mut fam = vec![a, b, c];
                    fam.dedup();
                    let best = (0u32..sets).filter(|h| fam.iter().all(|s| s & h != 0)).map(u32::count_ones).min().unwrap();
                    let family: Vec<Vec<u32>> = fam.iter().map(|&s| subsets(s, n)).collect();
                    for k in 0..=n {
                        let inst = gen_from_hitting_set(n, &family, k).unwrap();
                        let expect = best as usize <= k;
                        assert_eq!(brute_backtrack(&inst).unwrap().is_some(), expect, "n {n} family {fam:?} k {k}");
                        assert_eq!(brute_modulator_enum(&inst).unwrap().is_some(), expect);
                    }
                }
            }
        }
    }
}

#[test]
fn hitting_set_rejects_bad_input() {
    assert!(gen_from_hitting_set(2, &[vec![1]], 3).is_err());
    assert!(gen_from_hitting_set(2, &[vec![]], 1).is_err());
    assert!(gen_from_hitting_set(2, &[vec![3]], 1).is_err());
}

#[test]
fn independent_set_all_graphs_up_to_five() {
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, &edges);
            let alpha = (0u32..1 << n)
                .filter(|s| edges.iter().all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
                .map(u32::count_ones)
                .max()
                .unwrap() as usize;
            for k in 1..=n {
                let inst = gen_from_independent_set(&g, k).unwrap();
                assert_eq!(brute_budget(&inst).unwrap().is_some(), alpha >= k, "n {n} edges {edges:?} k {k}");
            }
        }
    }
}

#[test]
fn independent_set_rejects_out_of_range_sizes() {
    let g = Graph::new(3);
    assert!(gen_from_independent_set(&g, 0).is_err());
    assert!(gen_from_independent_set(&g, 4).is_err());
    assert!(gen_from_independent_set(&Graph::new(0), 1).is_err());
}
