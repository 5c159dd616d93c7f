//! Invariants checked over generated inputs.

use std::collections::BTreeSet;

use listcolor::algebra::{fast_zeta, ff_inv, ff_mul, poly::Poly, FieldElem, MulImpl, Portable, SquareMatrix, SubsetTable};
use listcolor::bitset::BitSet;
use listcolor::graph::{
    approx_modulator, find_deficient_set, min_modulator, verify_modulator, BipartiteGraph, Graph, Side,
};
use listcolor::instance::{
    gen_pce, gen_random, gen_save, parse_coloring, parse_instance, write_coloring, write_instance, ListModel, PceParams,
    RandomParams, SaveParams,
};
use listcolor::kernel::{kernelize_pce, saturate_edges, KernelTrace, PceOutcome};
use listcolor::oracle::{brute_backtrack, brute_modulator_enum, verify_coloring};
use listcolor::Tag;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fe() -> impl Strategy<Value = FieldElem> {
    any::<u64>().prop_map(FieldElem)
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for v in 0..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

fn bipartite() -> impl Strategy<Value = BipartiteGraph> {
    (0usize..8, 0usize..8).prop_flat_map(|(l, r)| {
        proptest::collection::vec(any::<bool>(), l * r).prop_map(move |bits| {
            let mut h = BipartiteGraph::new(l, r);
            for (i, b) in bits.into_iter().enumerate() {
                if b {
                    h.add_edge(i / r.max(1), i % r.max(1));
                }
            }
            h
        })
    })
}

fn lccm() -> impl Strategy<Value = listcolor::Instance> {
    (1usize..=9, 0usize..=4, 0.1f64..0.9, 0usize..3, any::<u64>()).prop_map(|(n, k, density, model, seed)| {
        let palette = n + 1;
        let lists = match model {
            0 => ListModel::Uniform(2),
            1 => ListModel::Regular(k.min(n)),
            _ => ListModel::Planted { extra: 1 },
        };
        gen_random(&RandomParams { n, density, modulator: Some(k.min(n)), lists, palette, tag: Tag::Lccm }, seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(a in fe(), b in fe(), c in fe()) {
        prop_assert_eq!(a * (b * c), (a * b) * c);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a + a, FieldElem::ZERO);
        prop_assert_eq!(Portable.mul(a, b), ff_mul(a, b));
        if !a.is_zero() {
            prop_assert_eq!(a * ff_inv(a).unwrap(), FieldElem::ONE);
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in proptest::collection::vec(any::<u64>(), 9), b in proptest::collection::vec(any::<u64>(), 9)) {
        let m = |v: &[u64]| SquareMatrix::from_rows(&v.chunks(3).map(<[u64]>::to_vec).collect::<Vec<_>>());
        let (a, b) = (m(&a), m(&b));
        prop_assert_eq!(a.mul_matrix(&b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn zeta_matches_subset_sums(r in 0usize..=8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = SubsetTable::from_vec(r, (0..1 << r).map(|_| rand::Rng::gen(&mut rng)).collect()).unwrap();
        let z = fast_zeta(&t);
        for s in 0..1usize << r {
            let direct = (0..1usize << r).filter(|a| a & !s == 0).fold(FieldElem::ZERO, |acc, a| acc + t[a]);
            prop_assert_eq!(z[s], direct);
        }
    }

    #[test]
    fn sieve_keeps_exactly_the_divisible_monomials(vars in 1usize..=8, terms in 0usize..10, seed in any::<u64>(), mask in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Poly::random(&mut rng, vars, terms, 2);
        let mask = mask & ((1 << vars) - 1);
        prop_assert_eq!(p.sieve(mask), p.divisible_by(mask));
    }

    #[test]
    fn bitset_agrees_with_btreeset(cap in 1usize..200, xs in proptest::collection::vec(any::<usize>(), 0..40), ys in proptest::collection::vec(any::<usize>(), 0..40)) {
        let xs: BTreeSet<usize> = xs.into_iter().map(|x| x % cap).collect();
        let ys: BTreeSet<usize> = ys.into_iter().map(|y| y % cap).collect();
        let a = BitSet::from_iter_with_capacity(cap, xs.iter().copied());
        let b = BitSet::from_iter_with_capacity(cap, ys.iter().copied());
        prop_assert_eq!(a.iter().collect::<Vec<_>>(), xs.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!(a.union(&b).len(), xs.union(&ys).count());
        prop_assert_eq!(a.intersection(&b).len(), xs.intersection(&ys).count());
        prop_assert_eq!(a.difference(&b).len(), xs.difference(&ys).count());
        prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
        prop_assert_eq!(a.complement().len(), cap - xs.len());
    }

    #[test]
    fn matching_is_maximum_and_cover_is_tight(h in bipartite()) {
        let m = h.maximum_matching();
        prop_assert!(h.is_matching(&m));
        let (m2, cl, cr) = h.konig_cover();
        prop_assert_eq!(m2.len(), m.len());
        prop_assert_eq!(cl.len() + cr.len(), m.len());
        for l in 0..h.left() {
            for r in h.neighbors(l) {
                prop_assert!(cl.contains(l) || cr.contains(r));
            }
        }
    }

    #[test]
    fn deficient_sets_are_hall_violators(h in bipartite()) {
        let m = h.maximum_matching();
        for (side, size) in [(Side::Left, h.left()), (Side::Right, h.right())] {
            match find_deficient_set(&h, side) {
                None => prop_assert_eq!(m.len(), size),
                Some(d) => {
                    prop_assert!(m.len() < size);
                    prop_assert!(d.neighborhood.len() < d.set.len());
                    prop_assert_eq!(d.matching.len(), d.neighborhood.len());
                }
            }
        }
    }

    #[test]
    fn modulators_leave_cliques(g in graph(10)) {
        let min = min_modulator(&g);
        let approx = approx_modulator(&g);
        prop_assert!(verify_modulator(&g, &min));
        prop_assert!(verify_modulator(&g, &approx));
        prop_assert!(min.len() <= approx.len() && approx.len() <= 2 * min.len());
    }

    #[test]
    fn instance_and_coloring_text_round_trip(inst in lccm()) {
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
        if let Some(col) = brute_backtrack(&inst).unwrap() {
            let again = parse_coloring(&inst, &write_coloring(&inst, &col)).unwrap();
            prop_assert_eq!(again, col);
        }
    }

    #[test]
    fn oracles_agree(inst in lccm()) {
        let a = brute_backtrack(&inst).unwrap();
        let b = brute_modulator_enum(&inst).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
        for col in a.iter().chain(b.iter()) {
            prop_assert!(verify_coloring(&inst, col));
        }
    }

    #[test]
    fn pce_kernel_is_bounded_and_its_trace_round_trips(n in 1usize..30, k in 0usize..6, palette in 1usize..30, seed in any::<u64>()) {
        let k = k.min(n);
        let inst = gen_pce(&PceParams { n, k, density: 0.5, palette, precolor_prob: 0.3, planted: seed % 2 == 0 }, seed);
        let trace = match kernelize_pce(&inst).unwrap() {
            PceOutcome::Kernel { instance, trace } => {
                prop_assert!(instance.n() <= 3 * k);
                trace
            }
            PceOutcome::No { trace } => trace,
        };
        prop_assert_eq!(KernelTrace::parse(&inst, &trace.write(&inst)).unwrap(), trace);
    }

    #[test]
    fn saturation_only_adds_edges(n in 1usize..14, palette in 1usize..14, seed in any::<u64>()) {
        let inst = gen_save(&SaveParams { n, density: 0.5, palette: palette.min(n), precolor_prob: 0.4 }, seed);
        let (sat, steps) = saturate_edges(&inst).unwrap();
        prop_assert_eq!(sat.graph.edge_count(), inst.graph.edge_count() + steps.len());
        for (u, v) in inst.graph.edges() {
            prop_assert!(sat.graph.has_edge(u, v));
        }
        prop_assert_eq!(brute_backtrack(&sat).unwrap().is_some(), brute_backtrack(&inst).unwrap().is_some());
    }
}
