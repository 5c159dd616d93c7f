use listcolor::instance::{gen_pce, PceParams};
use listcolor::instance::parse_instance;
use listcolor::kernel::{kernelize_pce, lift_pce, project_matching_trim, KernelTrace, PceOutcome, PceState, Step};
use listcolor::oracle::{brute_backtrack, verify_coloring};
use listcolor::{Coloring, Instance, InstanceSpec, Tag};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn inst(text: &str) -> Instance {
    parse_instance(text).unwrap()
}

fn solvable(i: &Instance) -> bool {
    brute_backtrack(i).unwrap().is_some()
}

/// Kernel, its oracle answer and a lifted coloring all agree with the input.
fn check_roundtrip(i: &Instance) {
    let expect = solvable(i);
    match kernelize_pce(i).unwrap() {
        PceOutcome::No { .. } => assert!(!expect, "kernel said NO on a solvable instance"),
        PceOutcome::Kernel { instance, trace } => {
            let sol = brute_backtrack(&instance).unwrap();
            assert_eq!(sol.is_some(), expect);
            if let Some(col) = sol {
                let lifted = lift_pce(i, &trace, &instance, &col).unwrap();
                assert!(verify_coloring(i, &lifted));
            }
        }
    }
}

fn fuzz(seed: u64, max_n: usize, max_k: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(0..=max_k.min(n));
    let p = PceParams {
        n,
        k,
        density: rng.gen_range(0.2..0.9),
        palette: (n - k + rng.gen_range(0..=k + 1)).saturating_sub(rng.gen_range(0..2)).max(1),
        precolor_prob: rng.gen_range(0.0..0.6),
        planted: rng.gen_bool(0.5),
    };
    gen_pce(&p, seed)
}

/// Dense modulator with few non-edges towards the clique and a palette of
/// exactly or nearly the clique size: the crown rule fires often here.
fn crown_heavy(seed: u64, max_n: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=max_n);
    let k = rng.gen_range(1..=(n / 2).min(6));
    let mut spec = InstanceSpec::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let p = if u >= k { 1.0 } else if v < k { 0.8 } else { 0.85 };
            if rng.gen_bool(p) {
                spec.edges.push((u, v));
            }
        }
    }
    let q = (n - k + rng.gen_range(0..2)) as u32;
    spec.lists = vec![(1..=q).collect(); n];
    spec.modulator = Some((0..k).collect());
    spec.tag = Tag::Pcecm;
    let mut taken: Vec<Option<u32>> = vec![None; n];
    for v in 0..n {
        let c = rng.gen_range(1..=q);
        let clash = spec.edges.iter().any(|&(a, b)| (a == v && taken[b] == Some(c)) || (b == v && taken[a] == Some(c)));
        if rng.gen_bool(0.2) && !clash {
            taken[v] = Some(c);
            spec.precoloring.push((v, c));
        }
    }
    spec.build().unwrap()
}

#[test]
fn low_degree_examples() {
    let i = inst("p listcolor 1 0\nl 0 : 1\nmod 0\ntag PCECM\n");
    let mut st = PceState::new(&i).unwrap();
    assert!(st.rule_low_degree());
    assert!(st.to_instance().unwrap().n() == 0);

    let tri = "p listcolor 4 4\ne 0 1\ne 0 2\ne 1 2\ne 3 0\nl 0 : 1 2 3\nl 1 : 1 2 3\nl 2 : 1 2 3\nl 3 : 1 2 3\nmod 3\ntag PCECM\n";
    let i = inst(tri);
    let mut st = PceState::new(&i).unwrap();
    assert!(st.rule_low_degree());
    assert!(!st.rule_low_degree());
    assert_eq!(solvable(&st.to_instance().unwrap()), solvable(&i));
    check_roundtrip(&i);

    // Every modulator vertex sees at least |Q| vertices.
    let i = inst("p listcolor 3 3\ne 0 1\ne 0 2\ne 1 2\nl 0 : 1 2\nl 1 : 1 2\nl 2 : 1 2\nmod 0\ntag PCECM\n");
    assert!(!PceState::new(&i).unwrap().rule_low_degree());
}

#[test]
fn crown_removes_the_shared_non_neighbor() {
    // Clique 0..4, modulator vertex 4 adjacent to 2 and 3 only.
    let mut text = String::from("p listcolor 5 8\n");
    for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 2), (4, 3)] {
        text += &format!("e {u} {v}\n");
    }
    for v in 0..5 {
        text += &format!("l {v} : 1 2 3 4\n");
    }
    text += "mod 4\ntag PCECM\n";
    let i = inst(&text);
    let mut st = PceState::new(&i).unwrap();
    assert!(st.rule_crown());
    match &st.trace.steps[0] {
        Step::Crown { set, removed, matching } => {
            assert_eq!(removed, &vec![4]);
            assert_eq!(set.len(), 2);
            assert_eq!(matching.len(), 1);
        }
        s => panic!("unexpected step {s:?}"),
    }
    let reduced = st.to_instance().unwrap();
    assert_eq!(solvable(&reduced), solvable(&i));
    let col = brute_backtrack(&reduced).unwrap().unwrap();
    assert!(verify_coloring(&i, &lift_pce(&i, &st.trace, &reduced, &col).unwrap()));
}

#[test]
fn precolored_clique_examples() {
    let i = inst("p listcolor 2 1\ne 0 1\nl 0 : 1 2\nl 1 : 1 2\npre 0 1\nmod\ntag PCECM\n");
    let mut st = PceState::new(&i).unwrap();
    assert!(st.rule_precolored_clique());
    let r = st.to_instance().unwrap();
    assert_eq!(r.n(), 1);
    assert_eq!(r.colors, vec![2]);
    assert!(solvable(&r) && solvable(&i));

    // The modulator vertex 2 shares the color and goes too.
    let i = inst("p listcolor 3 1\ne 0 1\nl 0 : 1 2\nl 1 : 1 2\nl 2 : 1 2\npre 0 1\npre 2 1\nmod 2\ntag PCECM\n");
    let mut st = PceState::new(&i).unwrap();
    assert!(st.rule_precolored_clique());
    assert_eq!(st.alive().iter().collect::<Vec<_>>(), vec![1]);
    check_roundtrip(&i);

    let i = inst("p listcolor 2 1\ne 0 1\nl 0 : 1 2\nl 1 : 1 2\nmod\ntag PCECM\n");
    assert!(!PceState::new(&i).unwrap().rule_precolored_clique());
}

#[test]
fn matching_trim_examples() {
    let i = inst("p listcolor 3 3\ne 0 1\ne 0 2\ne 1 2\nl 0 : 1 2 3 4\nl 1 : 1 2 3 4\nl 2 : 1 2 3 4\nmod\ntag PCECM\n");
    match kernelize_pce(&i).unwrap() {
        PceOutcome::Kernel { instance, trace } => {
            assert_eq!(instance.n(), 0);
            assert_eq!(instance.num_colors(), 0);
            assert_eq!(trace.steps, vec![Step::MatchingTrim { removed: vec![0, 1, 2], colors: vec![0, 1, 2], matching: vec![] }]);
            let lifted = lift_pce(&i, &trace, &instance, &Coloring::empty(0)).unwrap();
            assert!(verify_coloring(&i, &lifted));
        }
        o => panic!("unexpected {o:?}"),
    }
    let i = inst("p listcolor 3 3\ne 0 1\ne 0 2\ne 1 2\nl 0 : 1 2\nl 1 : 1 2\nl 2 : 1 2\nmod\ntag PCECM\n");
    assert!(matches!(kernelize_pce(&i).unwrap(), PceOutcome::No { .. }));
}

#[test]
fn empty_trace_lifts_to_itself() {
    let i = inst("p listcolor 2 1\ne 0 1\nl 0 : 1 2\nl 1 : 1 2\nmod 0 1\ntag PCECM\n");
    let col = Coloring(vec![Some(0), Some(1)]);
    assert_eq!(lift_pce(&i, &KernelTrace::default(), &i, &col).unwrap(), col);
    let bad = Coloring(vec![Some(0), Some(0)]);
    assert!(lift_pce(&i, &KernelTrace::default(), &i, &bad).is_err());
}

#[test]
fn fuzz_size_bound_and_idempotence() {
    for seed in 0..400u64 {
        let i = fuzz(seed, 60, 6);
        let k = i.modulator.as_ref().unwrap().len();
        if let PceOutcome::Kernel { instance, trace } = kernelize_pce(&i).unwrap() {
            assert!(instance.n() <= 3 * k, "seed {seed}: {} > 3*{k}", instance.n());
            let text = trace.write(&i);
            assert_eq!(KernelTrace::parse(&i, &text).unwrap(), trace);
            match kernelize_pce(&instance).unwrap() {
                PceOutcome::Kernel { instance: again, trace: t2 } => {
                    assert!(t2.steps.is_empty(), "seed {seed}: rules fired again: {:?}", t2.steps);
                    assert_eq!(again, instance);
                }
                PceOutcome::No { .. } => panic!("seed {seed}: kernel of a kernel is NO"),
            }
        }
    }
}

#[test]
fn fuzz_oracle_equivalence_and_lift() {
    for seed in 1000..1400u64 {
        check_roundtrip(&fuzz(seed, 14, 6));
    }
}

#[test]
fn fuzz_crown_heavy() {
    let mut crowns = 0;
    for seed in 0..3000u64 {
        let i = crown_heavy(seed, 12);
        if let PceOutcome::Kernel { instance, trace } = kernelize_pce(&i).unwrap() {
            assert!(instance.n() <= 3 * i.modulator.as_ref().unwrap().len());
            crowns += trace.steps.iter().filter(|s| matches!(s, Step::Crown { .. })).count();
        }
        check_roundtrip(&i);
    }
    assert!(crowns > 100, "crown rule fired only {crowns} times");
}

#[test]
fn fuzz_matching_projection() {
    let mut hits = 0;
    for seed in 2000..2600u64 {
        let i = fuzz(seed, 12, 5);
        let mut st = PceState::new(&i).unwrap();
        st.exhaust();
        let before = st.to_instance().unwrap();
        let Some(col) = brute_backtrack(&before).unwrap() else { continue };
        let PceOutcome::Kernel { instance, trace } = kernelize_pce(&before).unwrap() else {
            panic!("seed {seed}: solvable instance trimmed to NO");
        };
        let Some(step) = trace.steps.last() else { continue };
        assert!(trace.steps.len() == 1 && matches!(step, Step::MatchingTrim { .. }));
        let projected = project_matching_trim(&before, step, &col).unwrap();
        let keep = trace.surviving(before.n());
        let on_kernel = Coloring(keep.iter().map(|&v| projected.get(v)).collect());
        let on_kernel = on_kernel.relabel(&before, &instance).unwrap();
        assert!(verify_coloring(&instance, &on_kernel), "seed {seed}");
        hits += 1;
    }
    assert!(hits > 50, "only {hits} instances exercised the projection");
}
