//! Enumerate labeled partitions of the modulator; for each, test a
//! matching matrix for a monomial that uses every reuse variable.

use rand::Rng;
use rayon::prelude::*;

use super::{Answer, Split, SolveConfig};
use crate::algebra::{determinant_with, FieldElem, MulImpl};
use crate::error::Result;
use crate::graph::Graph;
use crate::instance::Instance;
use crate::rng::rng_at;

/// Modulator vertices grouped into independent color classes. Fresh blocks
/// take colors unused on the clique; reuse blocks share a clique color.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LabeledPartition {
    pub fresh: Vec<Vec<usize>>,
    pub reuse: Vec<Vec<usize>>,
}

/// Set partitions in restricted-growth-string order, skipping those with a
/// non-independent block; each is emitted once per fresh/reuse labeling,
/// labelings in lexicographic order with fresh before reuse.
pub struct PartitionIter {
    d: Vec<usize>,
    adj: Vec<u64>,
    rgs: Vec<usize>,
    blocks: Vec<u64>,
    started: bool,
    labels: u64,
    label_end: u64,
}

pub fn enumerate_labeled_partitions(g: &Graph, d: &[usize]) -> PartitionIter {
    assert!(d.len() < 64, "modulator too large to enumerate");
    let adj = d
        .iter()
        .map(|&u| d.iter().enumerate().filter(|&(_, &v)| g.has_edge(u, v)).fold(0u64, |m, (j, _)| m | 1 << j))
        .collect();
    PartitionIter {
        d: d.to_vec(),
        adj,
        rgs: vec![0; d.len()],
        blocks: vec![0; d.len()],
        started: false,
        labels: 0,
        label_end: 0,
    }
}

impl PartitionIter {
    fn block_count(&self, prefix: usize) -> usize {
        self.rgs[..prefix].iter().max().map_or(0, |&m| m + 1)
    }

    /// Moves to the next set partition with independent blocks.
    fn next_partition(&mut self) -> bool {
        let k = self.d.len();
        let (mut i, mut choice);
        if !self.started {
            self.started = true;
            if k == 0 {
                return true;
            }
            i = 0;
            choice = 0;
        } else {
            if k == 0 {
                return false;
            }
            i = k - 1;
            self.blocks[self.rgs[i]] &= !(1 << i);
            choice = self.rgs[i] + 1;
        }
        loop {
            let nb = self.block_count(i);
            if choice <= nb {
                if choice == nb || self.blocks[choice] & self.adj[i] == 0 {
                    self.rgs[i] = choice;
                    self.blocks[choice] |= 1 << i;
                    if i == k - 1 {
                        return true;
                    }
                    i += 1;
                    choice = 0;
                } else {
                    choice += 1;
                }
            } else {
                if i == 0 {
                    return false;
                }
                i -= 1;
                self.blocks[self.rgs[i]] &= !(1 << i);
                choice = self.rgs[i] + 1;
            }
        }
    }
}

impl Iterator for PartitionIter {
    type Item = LabeledPartition;

    fn next(&mut self) -> Option<LabeledPartition> {
        if self.labels == self.label_end {
            if !self.next_partition() {
                return None;
            }
            self.labels = 0;
            self.label_end = 1 << self.block_count(self.d.len());
        }
        let nb = self.block_count(self.d.len());
        let mut out = LabeledPartition::default();
        for b in 0..nb {
            let members: Vec<usize> = (0..self.d.len()).filter(|&j| self.rgs[j] == b).map(|j| self.d[j]).collect();
            if self.labels >> (nb - 1 - b) & 1 == 1 {
                out.reuse.push(members);
            } else {
                out.fresh.push(members);
            }
        }
        self.labels += 1;
        Some(out)
    }
}

/// One nonzero position of the matrix: `y * (1 + Σ z_j x_j)`.
#[derive(Clone, Debug)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub y: FieldElem,
    pub terms: Vec<(usize, FieldElem)>,
}

/// The matrix of one labeled partition, kept as a polynomial in the reuse
/// variables `x_0 .. x_{t-1}`.
#[derive(Clone, Debug)]
pub struct PartitionMatrix {
    pub dim: usize,
    /// Number of reuse variables.
    pub t: usize,
    pub entries: Vec<Entry>,
}

impl PartitionMatrix {
    /// Dense evaluation at `x`, with the variables in `zeroed` set to 0.
    pub fn evaluate_into<M: MulImpl>(&self, m: M, x: &[FieldElem], zeroed: u64, out: &mut [FieldElem]) {
        out.fill(FieldElem::ZERO);
        for e in &self.entries {
            let mut w = FieldElem::ONE;
            for &(j, z) in &e.terms {
                if zeroed >> j & 1 == 0 {
                    w += m.mul(z, x[j]);
                }
            }
            out[e.row * self.dim + e.col] = m.mul(e.y, w);
        }
    }

    /// `Σ_{I ⊆ [t]} det(M with x_I = 0)`; nonzero only if some perfect
    /// matching carries every variable.
    pub fn sieve<M: MulImpl>(&self, m: M, x: &[FieldElem]) -> FieldElem {
        let mut buf = vec![FieldElem::ZERO; self.dim * self.dim];
        let mut acc = FieldElem::ZERO;
        for zeroed in 0..1u64 << self.t {
            self.evaluate_into(m, x, zeroed, &mut buf);
            acc += determinant_with(m, &mut buf, self.dim);
        }
        acc
    }
}

/// Builds the matrix for `part`, or `None` when the clique and the fresh
/// blocks outnumber the colors. With `random_coefficients` false every
/// `z` is 1, which is the plain weight `1 + Σ x_j`; the solver draws them
/// at random so that distinct term selections cannot cancel.
pub fn build_partition_matrix(
    inst: &Instance,
    part: &LabeledPartition,
    rng: &mut impl Rng,
    random_coefficients: bool,
) -> Result<Option<PartitionMatrix>> {
    let split = Split::new(inst)?;
    Ok(build(inst, &split, part, rng, random_coefficients))
}

fn build(
    inst: &Instance,
    split: &Split,
    part: &LabeledPartition,
    rng: &mut impl Rng,
    random_coefficients: bool,
) -> Option<PartitionMatrix> {
    let (nc, p, nl) = (split.c.len(), part.fresh.len(), split.colors.len());
    if nc + p > nl {
        return None;
    }
    let dim = nl;
    let reuse_colors: Vec<_> = part.reuse.iter().map(|b| split.common_colors(b)).collect();
    let mut entries = Vec::new();
    for (row, &c) in split.c.iter().enumerate() {
        for (col, &l) in split.colors.iter().enumerate() {
            if !split.lists[c].contains(l) {
                continue;
            }
            let mut terms = Vec::new();
            for (j, block) in part.reuse.iter().enumerate() {
                if reuse_colors[j].contains(l) && block.iter().all(|&d| !inst.graph.has_edge(c, d)) {
                    let z = if random_coefficients { rng.gen() } else { FieldElem::ONE };
                    terms.push((j, z));
                }
            }
            entries.push(Entry { row, col, y: rng.gen(), terms });
        }
    }
    for (i, block) in part.fresh.iter().enumerate() {
        let common = split.common_colors(block);
        for (col, &l) in split.colors.iter().enumerate() {
            if common.contains(l) {
                entries.push(Entry { row: nc + i, col, y: rng.gen(), terms: Vec::new() });
            }
        }
    }
    for row in nc + p..dim {
        for col in 0..dim {
            entries.push(Entry { row, col, y: rng.gen(), terms: Vec::new() });
        }
    }
    Some(PartitionMatrix { dim, t: part.reuse.len(), entries })
}

pub fn decide_partition(inst: &Instance, cfg: &SolveConfig) -> Result<Answer> {
    Ok(decide_partition_with(inst, cfg)?.expect("no deadline was set"))
}

/// As [`decide_partition`]; returns `None` if the deadline passes first.
pub fn decide_partition_with(inst: &Instance, cfg: &SolveConfig) -> Result<Option<Answer>> {
    let split = Split::new(inst)?;
    let found = crate::with_mul_impl!(|m| {
        enumerate_labeled_partitions(&inst.graph, &split.d)
            .enumerate()
            .par_bridge()
            .map(|(idx, part)| -> Option<bool> {
                (0..cfg.reps).try_fold(false, |hit, rep| {
                    if hit {
                        return Some(true);
                    }
                    if cfg.expired() {
                        return None;
                    }
                    let mut rng = rng_at(cfg.seed, &[0x7061, rep as u64, idx as u64]);
                    let Some(pm) = build(inst, &split, &part, &mut rng, true) else {
                        return Some(false);
                    };
                    let x: Vec<FieldElem> = (0..pm.t).map(|_| rng.gen()).collect();
                    Some(!pm.sieve(m, &x).is_zero())
                })
            })
            .find_any(|r| *r != Some(false))
    });
    Ok(match found {
        Some(Some(true)) => Some(Answer::Yes),
        Some(_) => None,
        None => Some(Answer::No),
    })
}
