use std::time::{Duration, Instant};

use clap::Args;
use listcolor::instance::{gen_random, ListModel, RandomParams};
use listcolor::rng::derive_seed;
use listcolor::solver::{decide_partition_with, decide_sieve_with, SolveConfig};
use listcolor::{Instance, Result, Tag};

use crate::{Alg, Status};

pub const CSV_HEADER: &str = "# listcolor-bench v1";

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    pub k_min: usize,
    #[arg(long, default_value_t = 16)]
    pub k_max: usize,
    #[arg(long, default_value_t = 60)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "sieve")]
    pub algs: Vec<Alg>,
    /// Edge probability for pairs touching the modulator.
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    /// Random colors per list besides the planted one.
    #[arg(long, default_value_t = 2)]
    pub extra: usize,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Per-run time limit in milliseconds; a run that hits it counts at the
    /// limit and is reported in the `timeouts` column.
    #[arg(long)]
    pub timeout_ms: Option<u64>,
}

/// The planted instance timed at modulator size `k`.
pub fn bench_instance(a: &BenchArgs, k: usize) -> (Instance, u64) {
    let seed = derive_seed(a.seed, &[k as u64]);
    let p = RandomParams {
        n: a.n,
        density: a.density,
        modulator: Some(k),
        lists: ListModel::Planted { extra: a.extra },
        palette: a.n,
        tag: Tag::Lccm,
    };
    (gen_random(&p, seed), seed)
}

fn time_once(inst: &Instance, alg: Alg, seed: u64, a: &BenchArgs) -> Result<(f64, bool)> {
    let mut cfg = SolveConfig::new(seed, a.reps);
    let start = Instant::now();
    cfg.deadline = a.timeout_ms.map(|ms| start + Duration::from_millis(ms));
    let done = match alg {
        Alg::Sieve => decide_sieve_with(inst, &cfg)?.is_some(),
        Alg::Partition => decide_partition_with(inst, &cfg)?.is_some(),
        Alg::Brute | Alg::BruteMod => {
            return Err(listcolor::Error::Usage("bench times the randomized solvers only".into()));
        }
    };
    Ok((start.elapsed().as_secs_f64() * 1e3, !done))
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

pub fn run(a: &BenchArgs) -> Result<Status> {
    if a.trials == 0 || a.k_min > a.k_max || a.k_max > a.n {
        return Err(listcolor::Error::Usage("need trials >= 1 and k-min <= k-max <= n".into()));
    }
    println!("{CSV_HEADER}");
    println!("k,n,alg,median_ms,seed,timeouts");
    for &alg in &a.algs {
        for k in a.k_min..=a.k_max {
            let (inst, seed) = bench_instance(a, k);
            let mut times = Vec::with_capacity(a.trials);
            let mut timeouts = 0;
            for t in 0..a.trials {
                let (ms, late) = time_once(&inst, alg, derive_seed(seed, &[t as u64]), a)?;
                times.push(ms);
                timeouts += late as usize;
            }
            let alg_name = format!("{alg:?}").to_lowercase();
            println!("{k},{},{alg_name},{:.3},{seed},{timeouts}", a.n, median(&mut times));
        }
    }
    Ok(Status::Yes)
}
