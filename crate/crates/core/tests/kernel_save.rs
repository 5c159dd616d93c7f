use listcolor::instance::{gen_save, parse_instance, SaveParams};
use listcolor::kernel::{kernelize_save, lift_save, saturate_edges, KernelTrace, SaveOutcome, Step};
use listcolor::oracle::{brute_backtrack, check_coloring};
use listcolor::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn inst(text: &str) -> Instance {
    parse_instance(text).unwrap()
}

fn fuzz(seed: u64, max_n: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let p = SaveParams {
        n,
        density: rng.gen_range(0.3..0.95),
        palette: rng.gen_range(1..=n),
        precolor_prob: rng.gen_range(0.0..0.6),
    };
    gen_save(&p, seed)
}

/// Returns the outcome kind so the callers can count branches.
fn check(i: &Instance) -> &'static str {
    let expect = brute_backtrack(i).unwrap().is_some();
    match kernelize_save(i).unwrap() {
        SaveOutcome::Yes { coloring } => {
            assert!(expect, "YES on an unsolvable instance");
            check_coloring(i, &coloring).unwrap();
            "yes"
        }
        SaveOutcome::No { .. } => {
            assert!(!expect, "NO on a solvable instance");
            "no"
        }
        SaveOutcome::Kernel { instance, trace } => {
            let p = i.n() - i.lists[0].len();
            assert!(instance.n() <= 6 * p);
            let sol = brute_backtrack(&instance).unwrap();
            assert_eq!(sol.is_some(), expect);
            if let Some(col) = sol {
                let lifted = lift_save(i, &trace, &instance, &col).unwrap();
                check_coloring(i, &lifted).unwrap();
            }
            let text = trace.write(i);
            assert_eq!(KernelTrace::parse(i, &text).unwrap(), trace);
            "kernel"
        }
    }
}

#[test]
fn empty_pair_with_one_color() {
    let i = inst("p listcolor 2 0\nl 0 : 1\nl 1 : 1\ntag SAVE\n");
    match kernelize_save(&i).unwrap() {
        SaveOutcome::Yes { coloring } => assert_eq!(coloring.0, vec![Some(0), Some(0)]),
        other => panic!("expected YES, got {other:?}"),
    }
}

#[test]
fn complete_graph_uses_the_modulator_branch() {
    let mut text = String::from("p listcolor 4 6\n");
    for u in 0..4 {
        for v in u + 1..4 {
            text += &format!("e {u} {v}\n");
        }
    }
    for v in 0..4 {
        text += &format!("l {v} : 1 2 3 4\n");
    }
    text += "tag SAVE\n";
    let i = inst(&text);
    // p = 0 with no complement edges still answers YES directly.
    assert!(matches!(kernelize_save(&i).unwrap(), SaveOutcome::Yes { .. }));

    let i = inst(&text.replace(" 4\n", "\n"));
    assert_eq!(i.lists[0].len(), 3);
    assert!(matches!(kernelize_save(&i).unwrap(), SaveOutcome::No { .. } | SaveOutcome::Kernel { .. }));
    assert_eq!(check(&i), "no");
}

#[test]
fn saturation_rules() {
    // 0 and 1 pre-colored differently: R3 joins them.
    let i = inst("p listcolor 3 0\nl 0 : 1 2\nl 1 : 1 2\nl 2 : 1 2\npre 0 1\npre 1 2\ntag SAVE\n");
    let (_, steps) = saturate_edges(&i).unwrap();
    assert!(steps.contains(&Step::AddEdge { rule: 3, u: 0, v: 1 }));

    // 2 sees 0 (color 1) so it must also see 1 (color 1): R2.
    let i = inst("p listcolor 3 1\ne 0 2\nl 0 : 1 2\nl 1 : 1 2\nl 2 : 1 2\npre 0 1\npre 1 1\ntag SAVE\n");
    let (sat, steps) = saturate_edges(&i).unwrap();
    assert_eq!(steps, vec![Step::AddEdge { rule: 2, u: 1, v: 2 }]);
    assert!(sat.graph.has_edge(1, 2));

    // 2 sees color 1 and 3 sees color 2, which together cover Q: R1.
    let i = inst("p listcolor 4 3\ne 0 1\ne 0 2\ne 1 3\nl 0 : 1 2\nl 1 : 1 2\nl 2 : 1 2\nl 3 : 1 2\npre 0 1\npre 1 2\ntag SAVE\n");
    let (_, steps) = saturate_edges(&i).unwrap();
    assert_eq!(steps, vec![Step::AddEdge { rule: 1, u: 2, v: 3 }]);
    // Without the edge 1-3 nothing fires.
    let i = inst("p listcolor 4 2\ne 0 1\ne 0 2\nl 0 : 1 2\nl 1 : 1 2\nl 2 : 1 2\nl 3 : 1 2\npre 0 1\npre 1 2\ntag SAVE\n");
    assert!(saturate_edges(&i).unwrap().1.is_empty());
}

#[test]
fn adjacent_partners_of_one_class_get_different_colors() {
    // Vertices 2 and 3 share color 1; 0 and 1 are adjacent and each is
    // matched in the complement to one of them.
    let i = inst("p listcolor 4 1\ne 0 1\nl 0 : 1 2\nl 1 : 1 2\nl 2 : 1 2\nl 3 : 1 2\npre 2 1\npre 3 1\ntag SAVE\n");
    match kernelize_save(&i).unwrap() {
        SaveOutcome::Yes { coloring } => {
            check_coloring(&i, &coloring).unwrap();
            assert_ne!(coloring.get(0), coloring.get(1));
        }
        other => panic!("expected YES, got {other:?}"),
    }
}

#[test]
fn fuzz_oracle_equivalence() {
    let mut seen = std::collections::BTreeMap::new();
    for seed in 0..1500 {
        let i = fuzz(seed, 12);
        *seen.entry(check(&i)).or_insert(0) += 1;
    }
    for kind in ["yes", "no", "kernel"] {
        assert!(seen.get(kind).copied().unwrap_or(0) > 20, "too few {kind} outcomes: {seen:?}");
    }
}

#[test]
fn saturation_is_a_fixpoint() {
    for seed in 0..200 {
        let i = fuzz(seed, 16);
        let (sat, _) = saturate_edges(&i).unwrap();
        let (_, again) = saturate_edges(&sat).unwrap();
        assert!(again.is_empty(), "seed {seed}");
    }
}
