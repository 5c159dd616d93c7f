//! Problem instances, colorings and their validation.
//!
//! Colors carry an external `u32` label. Inside an instance they are dense
//! ids `0..colors.len()` assigned in ascending label order, so the id order
//! and the label order agree.

mod gen;
mod text;

pub use gen::{
    gen_from_hitting_set, gen_from_independent_set, gen_pce, gen_random, gen_rlc, gen_save, ListModel, PceParams,
    RandomParams, RlcParams, SaveParams,
};
pub use text::{parse_coloring, parse_instance, write_coloring, write_instance};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{verify_modulator, Graph};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Hash)]
pub enum Tag {
    /// List coloring with a clique modulator.
    #[default]
    Lccm,
    /// Pre-coloring extension with a clique modulator.
    Pcecm,
    /// (n-k)-regular list coloring.
    Rlc,
    /// List coloring using at most `q` distinct colors of `T'`.
    Budget,
    /// Pre-coloring extension saving `n - |Q|` colors.
    Save,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Lccm => "LCCM",
            Tag::Pcecm => "PCECM",
            Tag::Rlc => "RLC",
            Tag::Budget => "BUDGET",
            Tag::Save => "SAVE",
        }
    }

    /// Whether every list must equal the shared palette.
    pub fn has_palette(self) -> bool {
        matches!(self, Tag::Pcecm | Tag::Save)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Tag, String> {
        Ok(match s {
            "LCCM" => Tag::Lccm,
            "PCECM" => Tag::Pcecm,
            "RLC" => Tag::Rlc,
            "BUDGET" => Tag::Budget,
            "SAVE" => Tag::Save,
            other => return Err(format!("unknown tag {other:?}")),
        })
    }
}

/// The side constraint `|λ(V) ∩ colors| ≤ q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Budget {
    pub colors: BitSet,
    pub q: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Instance {
    pub graph: Graph,
    /// Color id to label, strictly ascending.
    pub colors: Vec<u32>,
    pub lists: Vec<BitSet>,
    /// Pre-assigned color id per vertex.
    pub precoloring: Vec<Option<usize>>,
    pub modulator: Option<BitSet>,
    pub budget: Option<Budget>,
    pub tag: Tag,
    pub k: Option<usize>,
}

/// An instance described with color labels; `build` assigns dense ids and
/// validates.
#[derive(Clone, Debug, Default)]
pub struct InstanceSpec {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub lists: Vec<Vec<u32>>,
    pub precoloring: Vec<(usize, u32)>,
    pub modulator: Option<Vec<usize>>,
    pub budget: Option<(usize, Vec<u32>)>,
    pub tag: Tag,
    pub k: Option<usize>,
}

impl InstanceSpec {
    pub fn new(n: usize) -> Self {
        InstanceSpec {
            n,
            lists: vec![Vec::new(); n],
            ..Default::default()
        }
    }

    pub fn build(&self) -> Result<Instance> {
        let n = self.n;
        if self.lists.len() != n {
            return Err(Error::Invalid(format!("{} lists for {n} vertices", self.lists.len())));
        }
        let mut graph = Graph::new(n);
        for &(u, v) in &self.edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge {u}-{v} leaves the vertex range 0..{n}")));
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at {u}")));
            }
            graph.add_edge(u, v);
        }
        let mut labels = BTreeSet::new();
        labels.extend(self.lists.iter().flatten().copied());
        labels.extend(self.precoloring.iter().map(|p| p.1));
        if let Some((_, b)) = &self.budget {
            labels.extend(b.iter().copied());
        }
        let colors: Vec<u32> = labels.into_iter().collect();
        let id = |c: u32| colors.binary_search(&c).unwrap();
        let lists = self
            .lists
            .iter()
            .map(|l| BitSet::from_iter_with_capacity(colors.len(), l.iter().map(|&c| id(c))))
            .collect();
        let mut precoloring = vec![None; n];
        for &(v, c) in &self.precoloring {
            if v >= n {
                return Err(Error::Invalid(format!("pre-coloring of vertex {v} outside 0..{n}")));
            }
            if precoloring[v].replace(id(c)).is_some() {
                return Err(Error::Invalid(format!("vertex {v} pre-colored twice")));
            }
        }
        let modulator = match &self.modulator {
            None => None,
            Some(d) => {
                if let Some(&v) = d.iter().find(|&&v| v >= n) {
                    return Err(Error::Invalid(format!("modulator vertex {v} outside 0..{n}")));
                }
                Some(BitSet::from_iter_with_capacity(n, d.iter().copied()))
            }
        };
        let budget = self.budget.as_ref().map(|(q, b)| Budget {
            q: *q,
            colors: BitSet::from_iter_with_capacity(colors.len(), b.iter().map(|&c| id(c))),
        });
        let inst = Instance {
            graph,
            colors,
            lists,
            precoloring,
            modulator,
            budget,
            tag: self.tag,
            k: self.k,
        };
        inst.validate()?;
        Ok(inst)
    }
}

impl Instance {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn num_colors(&self) -> usize {
        self.colors.len()
    }

    pub fn label(&self, c: usize) -> u32 {
        self.colors[c]
    }

    pub fn color_id(&self, label: u32) -> Option<usize> {
        self.colors.binary_search(&label).ok()
    }

    /// Union of all lists.
    pub fn palette(&self) -> BitSet {
        let mut q = BitSet::new(self.num_colors());
        for l in &self.lists {
            q.union_with(l);
        }
        q
    }

    pub fn precolored(&self) -> BitSet {
        BitSet::from_iter_with_capacity(self.n(), (0..self.n()).filter(|&v| self.precoloring[v].is_some()))
    }

    /// Back to the label-level description.
    pub fn to_spec(&self) -> InstanceSpec {
        let labels = |s: &BitSet| s.iter().map(|c| self.colors[c]).collect::<Vec<_>>();
        InstanceSpec {
            n: self.n(),
            edges: self.graph.edges().collect(),
            lists: self.lists.iter().map(labels).collect(),
            precoloring: (0..self.n())
                .filter_map(|v| self.precoloring[v].map(|c| (v, self.colors[c])))
                .collect(),
            modulator: self.modulator.as_ref().map(|d| d.iter().collect()),
            budget: self.budget.as_ref().map(|b| (b.q, labels(&b.colors))),
            tag: self.tag,
            k: self.k,
        }
    }

    /// Checks every structural invariant; the error names the first one
    /// that fails.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let bad = |m: String| Err(Error::Invalid(m));
        if self.lists.len() != n || self.precoloring.len() != n {
            return bad("list or pre-coloring table does not match the vertex count".into());
        }
        if self.colors.windows(2).any(|w| w[0] >= w[1]) {
            return bad("color labels must be strictly ascending".into());
        }
        for v in 0..n {
            if let Some(c) = self.precoloring[v] {
                if !self.lists[v].contains(c) {
                    return bad(format!("pre-color of vertex {v} is not on its list"));
                }
                if let Some(u) = self.graph.neighbors(v).iter().find(|&u| self.precoloring[u] == Some(c)) {
                    return bad(format!("pre-coloring is not proper on edge {}-{}", u.min(v), u.max(v)));
                }
            }
        }
        if let Some(d) = &self.modulator {
            if !verify_modulator(&self.graph, d) {
                return bad("removing the modulator does not leave a clique".into());
            }
        }
        if self.tag.has_palette() {
            if let Some(v) = (1..n).find(|&v| self.lists[v] != self.lists[0]) {
                return bad(format!("list of vertex {v} differs from the shared palette"));
            }
        }
        if self.tag == Tag::Rlc {
            let Some(k) = self.k else {
                return bad("RLC instance without `param k`".into());
            };
            if k > n {
                return bad(format!("parameter k = {k} exceeds n = {n}"));
            }
            if let Some(v) = (0..n).find(|&v| self.lists[v].len() != n - k) {
                return bad(format!("list of vertex {v} has size {} instead of n - k = {}", self.lists[v].len(), n - k));
            }
        }
        if self.tag == Tag::Budget && self.budget.is_none() {
            return bad("BUDGET instance without a `budget` line".into());
        }
        Ok(())
    }
}

/// A partial map from vertices to color ids of a particular instance.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Coloring(pub Vec<Option<usize>>);

impl Coloring {
    pub fn empty(n: usize) -> Self {
        Coloring(vec![None; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, c: usize) {
        self.0[v] = Some(c);
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    /// Distinct colors in use.
    pub fn used(&self, num_colors: usize) -> BitSet {
        BitSet::from_iter_with_capacity(num_colors, self.0.iter().flatten().copied())
    }

    /// Translates a coloring of `from` into color ids of `to` by label.
    pub fn relabel(&self, from: &Instance, to: &Instance) -> Result<Coloring> {
        self.0
            .iter()
            .map(|c| match c {
                None => Ok(None),
                Some(c) => to
                    .color_id(from.label(*c))
                    .map(Some)
                    .ok_or_else(|| Error::InvalidColoring(format!("color {} unknown to the target", from.label(*c)))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Coloring)
    }
}
