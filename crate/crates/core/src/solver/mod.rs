//! Randomized decision procedures for list coloring with a clique
//! modulator. Both have one-sided error: a YES answer is always correct.

mod partition;
mod sieve;

pub use partition::{
    build_partition_matrix, decide_partition, decide_partition_with, enumerate_labeled_partitions, LabeledPartition,
    PartitionIter, PartitionMatrix,
};
pub use sieve::{
    assemble_matrix, decide_sieve, decide_sieve_with, edge_family_member, precompute_tables, sieve_value, AuxiliaryGraph,
    EdgeTables, EdgeWeights,
};

use std::fmt;
use std::time::Instant;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

impl From<bool> for Answer {
    fn from(b: bool) -> Answer {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub seed: u64,
    pub reps: usize,
    /// Give up (returning no answer) once this instant has passed.
    pub deadline: Option<Instant>,
    /// Upper bound on the bytes the sieve may spend on edge tables.
    pub memory_budget: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            seed: 0,
            reps: 2,
            deadline: None,
            memory_budget: 2 << 30,
        }
    }
}

impl SolveConfig {
    pub fn new(seed: u64, reps: usize) -> Self {
        SolveConfig {
            seed,
            reps,
            ..Default::default()
        }
    }

    pub(crate) fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// The instance split into modulator and clique, with pre-colorings folded
/// into singleton lists.
#[derive(Clone, Debug)]
pub(crate) struct Split {
    pub d: Vec<usize>,
    pub c: Vec<usize>,
    pub lists: Vec<BitSet>,
    /// Union of the lists, as color ids.
    pub colors: Vec<usize>,
}

impl Split {
    pub fn new(inst: &Instance) -> Result<Split> {
        let d_set = inst.modulator.as_ref().ok_or(Error::MissingModulator)?;
        if inst.budget.is_some() {
            return Err(Error::Usage("the solvers do not handle budget constraints".into()));
        }
        let lists: Vec<BitSet> = (0..inst.n())
            .map(|v| match inst.precoloring[v] {
                Some(c) => BitSet::from_iter_with_capacity(inst.num_colors(), [c]),
                None => inst.lists[v].clone(),
            })
            .collect();
        let mut all = BitSet::new(inst.num_colors());
        for l in &lists {
            all.union_with(l);
        }
        Ok(Split {
            d: d_set.iter().collect(),
            c: (0..inst.n()).filter(|&v| !d_set.contains(v)).collect(),
            lists,
            colors: all.iter().collect(),
        })
    }

    /// Colors allowed for every vertex in `block`.
    pub fn common_colors(&self, block: &[usize]) -> BitSet {
        let mut s = BitSet::full(self.lists.first().map_or(0, BitSet::capacity));
        for &v in block {
            s.intersect_with(&self.lists[v]);
        }
        s
    }
}
