use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use listcolor::graph::{min_modulator, Graph};
use listcolor::instance::{
    gen_from_hitting_set, gen_from_independent_set, gen_pce, gen_random, gen_rlc, gen_save, parse_coloring,
    parse_instance, write_coloring, write_instance, ListModel, PceParams, RandomParams, RlcParams, SaveParams,
};
use listcolor::kernel::rlc::KernelKind;
use listcolor::kernel::{
    compress_rlc, kernelize_pce, kernelize_rlc, kernelize_save, lift_pce, lift_rlc, lift_rlc_kernel, lift_save,
    KernelTrace, PceOutcome, RlcOutcome, SaveOutcome,
};
use listcolor::oracle::{brute_backtrack_capped, brute_budget_capped, brute_modulator_enum, check_coloring};
use listcolor::rng::rng_at;
use listcolor::solver::{decide_partition, decide_sieve, Answer, SolveConfig};
use listcolor::{Error, Instance, Result, Tag};
use rand::seq::IteratorRandom;
use rand::Rng;

use crate::{Alg, CheckArgs, GenArgs, KernelArgs, LiftArgs, Model, Problem, SolveArgs, Status};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?)
}

fn status(a: Answer) -> Status {
    match a {
        Answer::Yes => Status::Yes,
        Answer::No => Status::No,
    }
}

fn trace_path(given: &Option<PathBuf>, file: &Path) -> PathBuf {
    given.clone().unwrap_or_else(|| {
        let mut s = file.as_os_str().to_owned();
        s.push(".trace");
        PathBuf::from(s)
    })
}

/// The solvers need a modulator; compute a minimum one when the file has none.
fn with_modulator(mut inst: Instance) -> Instance {
    if inst.modulator.is_none() {
        inst.modulator = Some(min_modulator(&inst.graph));
    }
    inst
}

pub fn run_solver(inst: &Instance, alg: Alg, seed: u64, reps: usize, cap: usize) -> Result<Option<listcolor::Coloring>> {
    let cfg = SolveConfig::new(seed, reps);
    let yes = |a: Answer| (a == Answer::Yes).then(|| listcolor::Coloring::empty(0));
    match alg {
        Alg::Sieve => decide_sieve(&with_modulator(inst.clone()), &cfg).map(yes),
        Alg::Partition => decide_partition(&with_modulator(inst.clone()), &cfg).map(yes),
        Alg::Brute if inst.budget.is_some() => brute_budget_capped(inst, cap),
        Alg::Brute => brute_backtrack_capped(inst, cap),
        Alg::BruteMod => brute_modulator_enum(&with_modulator(inst.clone())),
    }
}

pub fn solve(a: &SolveArgs) -> Result<Status> {
    let inst = load(&a.file)?;
    let start = Instant::now();
    let sol = run_solver(&inst, a.alg, a.seed, a.reps, a.cap)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let answer = Answer::from(sol.is_some());
    println!("{answer}");
    if let (Some(path), Some(col)) = (&a.coloring, &sol) {
        if col.len() == inst.n() {
            write(path, &write_coloring(&inst, col))?;
        } else {
            eprintln!("note: --alg {:?} decides only; no coloring written", a.alg);
        }
    }
    if a.report {
        eprintln!(
            "report instance={} alg={:?} answer={answer} ms={ms:.3} seed={} reps={}",
            a.file.display(),
            a.alg,
            a.seed,
            a.reps
        );
    }
    Ok(status(answer))
}

pub fn kernel(a: &KernelArgs) -> Result<Status> {
    let inst = load(&a.file)?;
    let trace_file = trace_path(&a.trace, &a.file);
    let report = |n: usize, c: usize| eprintln!("kernel n={} -> {n}, colors={} -> {c}", inst.n(), inst.num_colors());
    match a.problem {
        Problem::Pce => match kernelize_pce(&inst)? {
            PceOutcome::Kernel { instance, trace } => {
                write(&trace_file, &trace.write(&inst))?;
                report(instance.n(), instance.num_colors());
                print!("{}", write_instance(&instance));
                Ok(Status::Yes)
            }
            PceOutcome::No { trace } => {
                write(&trace_file, &trace.write(&inst))?;
                println!("NO");
                Ok(Status::No)
            }
        },
        Problem::Save => match kernelize_save(&inst)? {
            SaveOutcome::Yes { coloring } => {
                println!("YES");
                print!("{}", write_coloring(&inst, &coloring));
                Ok(Status::Yes)
            }
            SaveOutcome::Kernel { instance, trace } => {
                write(&trace_file, &trace.write(&inst))?;
                report(instance.n(), instance.num_colors());
                print!("{}", write_instance(&instance));
                Ok(Status::Yes)
            }
            SaveOutcome::No { trace } => {
                write(&trace_file, &trace.write(&inst))?;
                println!("NO");
                Ok(Status::No)
            }
        },
        Problem::Rlc => {
            let k = kernelize_rlc(&inst)?;
            report(k.instance.n(), k.instance.num_colors());
            print!("{}", write_instance(&k.instance));
            Ok(if k.kind == KernelKind::No { Status::No } else { Status::Yes })
        }
        Problem::RlcCompress => match compress_rlc(&inst)? {
            RlcOutcome::Yes => {
                println!("YES");
                Ok(Status::Yes)
            }
            RlcOutcome::No => {
                println!("NO");
                Ok(Status::No)
            }
            RlcOutcome::Budget { instance, .. } => {
                report(instance.n(), instance.num_colors());
                print!("{}", write_instance(&instance));
                Ok(Status::Yes)
            }
        },
    }
}

fn mismatch() -> Error {
    Error::Usage("the reduced instance is not the kernel of the original".into())
}

pub fn lift(a: &LiftArgs) -> Result<Status> {
    let original = load(&a.original)?;
    let reduced = load(&a.reduced)?;
    let col = parse_coloring(&reduced, &read(&a.coloring)?)?;
    let out = match a.problem {
        Problem::Pce | Problem::Save => {
            let trace = KernelTrace::parse(&original, &read(&trace_path(&a.trace, &a.original))?)?;
            if a.problem == Problem::Pce {
                lift_pce(&original, &trace, &reduced, &col)?
            } else {
                lift_save(&original, &trace, &reduced, &col)?
            }
        }
        // The RLC reductions are deterministic, so the state is recomputed.
        Problem::Rlc => {
            let k = kernelize_rlc(&original)?;
            if k.instance != reduced {
                return Err(mismatch());
            }
            lift_rlc_kernel(&k, &col)?
        }
        Problem::RlcCompress => match compress_rlc(&original)? {
            RlcOutcome::Budget { instance, state } if instance == reduced => lift_rlc(&state, &instance, &col)?.0,
            _ => return Err(mismatch()),
        },
    };
    print!("{}", write_coloring(&original, &out));
    Ok(Status::Yes)
}

pub fn generate(a: &GenArgs) -> Result<Instance> {
    let palette = a.palette.unwrap_or(a.n);
    let random = |lists| RandomParams {
        n: a.n,
        density: a.density,
        modulator: Some(a.k),
        lists,
        palette,
        tag: Tag::Lccm,
    };
    let inst = match a.model {
        Model::Random => gen_random(&random(ListModel::Uniform(a.list_size)), a.seed),
        Model::Planted => gen_random(&random(ListModel::Planted { extra: a.list_size }), a.seed),
        Model::HittingSet => {
            let mut rng = rng_at(a.seed, &[0x6873]);
            let family: Vec<Vec<u32>> = (0..a.sets)
                .map(|_| {
                    let size = rng.gen_range(1..=a.n.clamp(1, 3));
                    let mut f = (1..=a.n as u32).choose_multiple(&mut rng, size);
                    f.sort_unstable();
                    f
                })
                .collect();
            gen_from_hitting_set(a.n, &family, a.k)?
        }
        Model::IndependentSet => {
            let mut rng = rng_at(a.seed, &[0x6973]);
            let mut g = Graph::new(a.n);
            for u in 0..a.n {
                for v in u + 1..a.n {
                    if rng.gen_bool(a.density) {
                        g.add_edge(u, v);
                    }
                }
            }
            gen_from_independent_set(&g, a.k)?
        }
        Model::Pce => gen_pce(
            &PceParams { n: a.n, k: a.k, density: a.density, palette, precolor_prob: a.precolor, planted: false },
            a.seed,
        ),
        Model::Rlc => gen_rlc(
            &RlcParams {
                n: a.n,
                k: a.k,
                palette,
                hot: (2 * a.k).max(1),
                hot_bias: 0.8,
                // Fewer than k stars: no complement matching of size k.
                stars: a.k.saturating_sub(1),
                star_size: 3,
            },
            a.seed,
        ),
        Model::Save => gen_save(
            &SaveParams { n: a.n, density: a.density, palette, precolor_prob: a.precolor },
            a.seed,
        ),
    };
    Ok(inst)
}

pub fn gen(a: &GenArgs) -> Result<Status> {
    if !(0.0..=1.0).contains(&a.density) || !(0.0..=1.0).contains(&a.precolor) {
        return Err(Error::Usage("probabilities must lie in [0, 1]".into()));
    }
    print!("{}", write_instance(&generate(a)?));
    Ok(Status::Yes)
}

pub fn check(a: &CheckArgs) -> Result<Status> {
    let inst = load(&a.file)?;
    let col = parse_coloring(&inst, &read(&a.coloring)?)?;
    match check_coloring(&inst, &col) {
        Ok(()) => {
            println!("VALID");
            Ok(Status::Yes)
        }
        Err(why) => {
            println!("INVALID: {why}");
            Ok(Status::No)
        }
    }
}
