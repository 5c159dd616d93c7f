//! The single-matrix sieve: one auxiliary bipartite graph whose entries
//! encode independent subsets of the modulator, evaluated for every
//! `I ⊆ D` from zeta-transformed edge tables.

use rand::Rng;
use rayon::prelude::*;

use super::{Answer, Split, SolveConfig};
use crate::algebra::{determinant_with, zeta_in_place, FieldElem, MulImpl, SquareMatrix, MAX_GROUND};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rng::rng_at;

/// Rows are the vertices `0..n` followed by padding; columns are the
/// colors of `L` followed by one artificial color per modulator vertex.
#[derive(Clone, Debug)]
pub struct AuxiliaryGraph {
    pub n: usize,
    pub k: usize,
    pub dim: usize,
    /// Column order of the real colors (color ids).
    pub colors: Vec<usize>,
    /// Modulator vertices; bit `i` of a subset mask is `d[i]`.
    pub d: Vec<usize>,
    /// Vertex-by-real-color edges as `(vertex, column)`.
    pub edges: Vec<(usize, usize)>,
    d_pos: Vec<Option<usize>>,
    /// Per modulator position, its neighbors inside the modulator.
    d_adj: Vec<u64>,
    /// Per vertex, its neighbors inside the modulator.
    nbr_d: Vec<u64>,
    /// Per column, the modulator vertices whose list holds that color.
    color_d: Vec<u64>,
}

impl AuxiliaryGraph {
    /// `None` when `|L| < |C|`: the clique cannot be colored at all.
    pub fn new(inst: &Instance) -> Result<Option<AuxiliaryGraph>> {
        let s = Split::new(inst)?;
        let k = s.d.len();
        if k > MAX_GROUND {
            return Err(Error::Capacity { what: "modulator size", limit: MAX_GROUND, got: k });
        }
        if s.colors.len() < s.c.len() {
            return Ok(None);
        }
        let n = inst.n();
        let mut d_pos = vec![None; n];
        for (i, &v) in s.d.iter().enumerate() {
            d_pos[v] = Some(i);
        }
        let mask_of = |set: &crate::bitset::BitSet| set.iter().filter_map(|u| d_pos[u]).fold(0u64, |m, i| m | 1 << i);
        let nbr_d: Vec<u64> = (0..n).map(|v| mask_of(inst.graph.neighbors(v))).collect();
        let d_adj = s.d.iter().map(|&v| nbr_d[v]).collect();
        let color_d = s
            .colors
            .iter()
            .map(|&l| s.d.iter().enumerate().filter(|&(_, &v)| s.lists[v].contains(l)).fold(0u64, |m, (i, _)| m | 1 << i))
            .collect();
        let edges = (0..n)
            .flat_map(|v| {
                let lists = &s.lists;
                s.colors.iter().enumerate().filter(move |&(_, &l)| lists[v].contains(l)).map(move |(col, _)| (v, col))
            })
            .collect();
        Ok(Some(AuxiliaryGraph {
            n,
            k,
            dim: s.colors.len() + k,
            colors: s.colors,
            d: s.d,
            edges,
            d_pos,
            d_adj,
            nbr_d,
            color_d,
        }))
    }

    pub fn padding(&self) -> usize {
        self.dim - self.n
    }

    fn independent(&self, s: u64) -> bool {
        let mut rest = s;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            if self.d_adj[i] & s != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    /// Modulator subsets that may appear in the family of edge `(v, col)`,
    /// and the position `v` must occupy if it lies in the modulator.
    fn allowed(&self, v: usize, col: usize) -> (u64, Option<usize>) {
        match self.d_pos[v] {
            Some(i) => (self.color_d[col], Some(i)),
            None => (self.color_d[col] & !self.nbr_d[v], None),
        }
    }
}

/// Whether `s` belongs to the set family of H-edge `(row, col)`.
/// Artificial rows and columns admit only the empty set.
pub fn edge_family_member(aux: &AuxiliaryGraph, row: usize, col: usize, s: u64) -> bool {
    if row >= aux.n || col >= aux.colors.len() {
        return s == 0;
    }
    let (allowed, must) = aux.allowed(row, col);
    s & !allowed == 0 && must.is_none_or(|i| s >> i & 1 == 1) && aux.independent(s)
}

/// The random evaluation point. Each table edge gets its own coefficient
/// per modulator vertex (`w`), standing for `x_s` times an independent
/// scalar; every nonzero matrix position also gets a `y`.
#[derive(Clone, Debug)]
pub struct EdgeWeights {
    pub y_edges: Vec<FieldElem>,
    /// Row-major `edges x k`.
    pub w: Vec<FieldElem>,
    pub y_artificial: Vec<FieldElem>,
    /// Row-major `padding x dim`.
    pub y_padding: Vec<FieldElem>,
}

impl EdgeWeights {
    pub fn random(aux: &AuxiliaryGraph, rng: &mut impl Rng) -> Self {
        let mut draw = |len: usize| (0..len).map(|_| rng.gen()).collect::<Vec<FieldElem>>();
        EdgeWeights {
            y_edges: draw(aux.edges.len()),
            w: draw(aux.edges.len() * aux.k),
            y_artificial: draw(aux.k),
            y_padding: draw(aux.padding() * aux.dim),
        }
    }

    /// The plain polynomial `P(vℓ) = Σ_S Π x_s`: every edge uses the same
    /// `x`.
    pub fn literal(aux: &AuxiliaryGraph, x: &[FieldElem], rng: &mut impl Rng) -> Self {
        assert_eq!(x.len(), aux.k);
        let mut wts = EdgeWeights::random(aux, rng);
        for e in 0..aux.edges.len() {
            wts.w[e * aux.k..(e + 1) * aux.k].copy_from_slice(x);
        }
        wts
    }
}

/// Per-edge values `P_{-I}(vℓ)` for all `I ⊆ D`.
#[derive(Clone, Debug)]
pub struct EdgeTables {
    k: usize,
    /// Per edge, the zeta transform `t[T] = Σ_{S ⊆ T} f(S)`, so that
    /// `P_{-I} = t[D \ I]`.
    zeta: Vec<Vec<FieldElem>>,
}

impl EdgeTables {
    pub fn get(&self, edge: usize, i: u64) -> FieldElem {
        let full = (1u64 << self.k) - 1;
        self.zeta[edge][(full & !i) as usize]
    }
}

/// Splits `D` into `low` bits held in tables and `high` bits iterated over
/// in blocks.
struct Blocking {
    low: usize,
    high: usize,
}

impl Blocking {
    fn new(k: usize, edges: usize, budget: usize) -> Blocking {
        let per = edges.max(1) * std::mem::size_of::<FieldElem>();
        let high = (0..=k).find(|&h| per.saturating_mul(1 << (k - h)) <= budget).unwrap_or(k);
        Blocking { low: k - high, high }
    }
}

/// Tables over the low bits for a fixed assignment `ih` of the high bits of
/// `I`: entry `T` holds `Σ f(S)` over `S` with `S_low ⊆ T` and
/// `S_high ⊆ D_high \ ih`.
fn block_tables<M: MulImpl>(m: M, aux: &AuxiliaryGraph, wts: &EdgeWeights, blk: &Blocking, ih: u64) -> Vec<Vec<FieldElem>> {
    let lo_mask = (1u64 << blk.low) - 1;
    let free_high = ((1u64 << blk.high) - 1) & !ih;
    aux.edges
        .par_iter()
        .enumerate()
        .map(|(e, &(v, col))| {
            let (allowed, must) = aux.allowed(v, col);
            let w = &wts.w[e * aux.k..(e + 1) * aux.k];
            let a_lo = allowed & lo_mask;
            let a_hi = (allowed >> blk.low) & free_high;
            let mut prod_lo = vec![FieldElem::ZERO; 1 << blk.low];
            prod_lo[0] = FieldElem::ONE;
            let mut s = a_lo;
            let mut subs = Vec::new();
            loop {
                subs.push(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & a_lo;
            }
            subs.reverse();
            for &s in &subs[1..] {
                let rest = s & (s - 1);
                let i = s.trailing_zeros() as usize;
                prod_lo[s as usize] = if aux.d_adj[i] & rest == 0 && !prod_lo[rest as usize].is_zero() {
                    m.mul(prod_lo[rest as usize], w[i])
                } else {
                    FieldElem::ZERO
                };
            }
            let mut g = vec![FieldElem::ZERO; 1 << blk.low];
            let mut sh = a_hi;
            loop {
                let s_high = sh << blk.low;
                let must_ok = must.is_none_or(|i| i < blk.low || s_high >> i & 1 == 1);
                if must_ok && aux.independent(s_high) {
                    let mut ph = FieldElem::ONE;
                    let mut bits = s_high;
                    while bits != 0 {
                        ph = m.mul(ph, w[bits.trailing_zeros() as usize]);
                        bits &= bits - 1;
                    }
                    let blocked = (0..aux.k)
                        .filter(|&i| s_high >> i & 1 == 1)
                        .fold(0u64, |acc, i| acc | aux.d_adj[i])
                        & lo_mask;
                    for &s in &subs {
                        if s & blocked != 0 || prod_lo[s as usize].is_zero() {
                            continue;
                        }
                        if let Some(i) = must.filter(|&i| i < blk.low) {
                            if s >> i & 1 == 0 {
                                continue;
                            }
                        }
                        g[s as usize] += m.mul(prod_lo[s as usize], ph);
                    }
                }
                if sh == 0 {
                    break;
                }
                sh = (sh - 1) & a_hi;
            }
            zeta_in_place(&mut g);
            g
        })
        .collect()
}

/// All tables at once, over the whole modulator.
pub fn precompute_tables(aux: &AuxiliaryGraph, wts: &EdgeWeights) -> EdgeTables {
    let blk = Blocking { low: aux.k, high: 0 };
    let zeta = crate::with_mul_impl!(|m| block_tables(m, aux, wts, &blk, 0));
    EdgeTables { k: aux.k, zeta }
}

/// Matrix entries shared by every `I`: artificial colors and padding rows.
fn base_matrix(aux: &AuxiliaryGraph, wts: &EdgeWeights) -> Vec<FieldElem> {
    let dim = aux.dim;
    let mut a = vec![FieldElem::ZERO; dim * dim];
    for (i, &v) in aux.d.iter().enumerate() {
        a[v * dim + aux.colors.len() + i] = wts.y_artificial[i];
    }
    for r in 0..aux.padding() {
        a[(aux.n + r) * dim..(aux.n + r + 1) * dim].copy_from_slice(&wts.y_padding[r * dim..(r + 1) * dim]);
    }
    a
}

/// `A_{-I}` from precomputed tables.
pub fn assemble_matrix(aux: &AuxiliaryGraph, tables: &EdgeTables, i: u64, wts: &EdgeWeights) -> SquareMatrix {
    let mut m = SquareMatrix::zeros(aux.dim);
    let base = base_matrix(aux, wts);
    for r in 0..aux.dim {
        for c in 0..aux.dim {
            m.set(r, c, base[r * aux.dim + c]);
        }
    }
    for (e, &(v, col)) in aux.edges.iter().enumerate() {
        m.set(v, col, wts.y_edges[e] * tables.get(e, i));
    }
    m
}

pub fn decide_sieve(inst: &Instance, cfg: &SolveConfig) -> Result<Answer> {
    Ok(decide_sieve_with(inst, cfg)?.expect("no deadline was set"))
}

/// As [`decide_sieve`]; returns `None` if the deadline passes first.
pub fn decide_sieve_with(inst: &Instance, cfg: &SolveConfig) -> Result<Option<Answer>> {
    let Some(aux) = AuxiliaryGraph::new(inst)? else {
        return Ok(Some(Answer::No));
    };
    for rep in 0..cfg.reps {
        let mut rng = rng_at(cfg.seed, &[0x7369, rep as u64]);
        let wts = EdgeWeights::random(&aux, &mut rng);
        let total = crate::with_mul_impl!(|m| sieve_sum(m, &aux, &wts, cfg));
        match total {
            None => return Ok(None),
            Some(t) if !t.is_zero() => return Ok(Some(Answer::Yes)),
            Some(_) => {}
        }
    }
    Ok(Some(Answer::No))
}

/// `Σ_{I ⊆ D} det A_{-I}` at the point `wts`, holding at most
/// `memory_budget` bytes of tables at a time.
pub fn sieve_value(aux: &AuxiliaryGraph, wts: &EdgeWeights, memory_budget: usize) -> FieldElem {
    let cfg = SolveConfig { memory_budget, ..SolveConfig::default() };
    crate::with_mul_impl!(|m| sieve_sum(m, aux, wts, &cfg)).expect("no deadline was set")
}

/// `Σ_{I ⊆ D} det A_{-I}`, or `None` on deadline.
fn sieve_sum<M: MulImpl>(m: M, aux: &AuxiliaryGraph, wts: &EdgeWeights, cfg: &SolveConfig) -> Option<FieldElem> {
    let blk = Blocking::new(aux.k, aux.edges.len(), cfg.memory_budget);
    let base = base_matrix(aux, wts);
    let dim = aux.dim;
    let lo_full = (1u64 << blk.low) - 1;
    let mut total = FieldElem::ZERO;
    for ih in 0..1u64 << blk.high {
        if cfg.expired() {
            return None;
        }
        let tables = block_tables(m, aux, wts, &blk, ih);
        let part = (0..1u64 << blk.low)
            .into_par_iter()
            .map_init(
                || vec![FieldElem::ZERO; dim * dim],
                |buf, il| {
                    buf.copy_from_slice(&base);
                    let idx = (lo_full & !il) as usize;
                    for (e, &(v, col)) in aux.edges.iter().enumerate() {
                        buf[v * dim + col] = m.mul(wts.y_edges[e], tables[e][idx]);
                    }
                    determinant_with(m, buf, dim)
                },
            )
            .reduce(|| FieldElem::ZERO, |a, b| a + b);
        total += part;
    }
    Some(total)
}
