//! The replay log of a kernelization, in original vertex ids and color ids.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Step {
    /// A modulator vertex with fewer neighbors than palette colors.
    LowDegree { vertex: usize },
    /// Vertices removed behind a deficient clique set `set`; `matching`
    /// pairs each removed vertex with a member of `set`.
    Crown { set: Vec<usize>, removed: Vec<usize>, matching: Vec<(usize, usize)> },
    /// A pre-colored clique vertex: its whole color class and the color.
    PrecoloredClique { color: usize, class: Vec<usize> },
    /// Clique vertices outside a maximum matching, removed together with
    /// as many free colors; `matching` holds the matched `(vertex, color)`
    /// pairs.
    MatchingTrim { removed: Vec<usize>, colors: Vec<usize>, matching: Vec<(usize, usize)> },
    /// An edge added by a saturation rule (1, 2 or 3).
    AddEdge { rule: u8, u: usize, v: usize },
}

impl Step {
    fn id(&self) -> String {
        match self {
            Step::LowDegree { .. } => "1".into(),
            Step::Crown { .. } => "2".into(),
            Step::PrecoloredClique { .. } => "3".into(),
            Step::MatchingTrim { .. } => "4".into(),
            Step::AddEdge { rule, .. } => format!("R{rule}"),
        }
    }

    pub fn removed_vertices(&self) -> Vec<usize> {
        match self {
            Step::LowDegree { vertex } => vec![*vertex],
            Step::Crown { removed, .. } => removed.clone(),
            Step::PrecoloredClique { class, .. } => class.clone(),
            Step::MatchingTrim { removed, .. } => removed.clone(),
            Step::AddEdge { .. } => Vec::new(),
        }
    }

    pub fn removed_colors(&self) -> Vec<usize> {
        match self {
            Step::PrecoloredClique { color, .. } => vec![*color],
            Step::MatchingTrim { colors, .. } => colors.clone(),
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct KernelTrace {
    pub steps: Vec<Step>,
    /// The rules proved the instance unsolvable.
    pub no: bool,
}

const HEADER: &str = "# listcolor-trace v1";

fn join(xs: impl IntoIterator<Item = String>) -> String {
    xs.into_iter().map(|x| format!(" {x}")).collect()
}

fn pair_at(line: usize, t: &str) -> Result<(&str, &str)> {
    t.split_once(':').ok_or_else(|| Error::Parse { line, msg: "expected a:b pair".into() })
}

impl KernelTrace {
    /// Vertices of the original instance that survive, ascending; vertex
    /// `i` of the reduced instance is the `i`-th of these.
    pub fn surviving(&self, n: usize) -> Vec<usize> {
        let mut alive = vec![true; n];
        for s in &self.steps {
            for v in s.removed_vertices() {
                alive[v] = false;
            }
        }
        (0..n).filter(|&v| alive[v]).collect()
    }

    /// Line format `rule <id> remove-v <…> remove-c <…> witness <…>`, with
    /// colors written as labels of `inst`.
    pub fn write(&self, inst: &Instance) -> String {
        let lab = |c: &usize| inst.label(*c).to_string();
        let mut out = format!("{HEADER}\n");
        for s in &self.steps {
            let witness = match s {
                Step::LowDegree { .. } | Step::PrecoloredClique { .. } => String::new(),
                Step::Crown { set, matching, .. } => format!(
                    " set{} match{}",
                    join(set.iter().map(usize::to_string)),
                    join(matching.iter().map(|(a, b)| format!("{a}:{b}")))
                ),
                Step::MatchingTrim { matching, .. } => {
                    format!(" match{}", join(matching.iter().map(|(v, c)| format!("{v}:{}", lab(c)))))
                }
                Step::AddEdge { u, v, .. } => format!(" edge {u}:{v}"),
            };
            let _ = writeln!(
                out,
                "rule {} remove-v{} remove-c{} witness{}",
                s.id(),
                join(s.removed_vertices().iter().map(usize::to_string)),
                join(s.removed_colors().iter().map(lab)),
                witness
            );
        }
        if self.no {
            out.push_str("verdict NO\n");
        }
        out
    }

    pub fn parse(inst: &Instance, text: &str) -> Result<KernelTrace> {
        let mut trace = KernelTrace::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |m: &str| Error::Parse { line, msg: m.to_string() };
            let toks: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            if toks == ["verdict", "NO"] {
                trace.no = true;
                continue;
            }
            if toks[0] != "rule" || toks.len() < 2 {
                return Err(err("expected `rule <id> …` or `verdict NO`"));
            }
            let mut sections: std::collections::HashMap<&str, Vec<&str>> = Default::default();
            let mut cur = "";
            for &t in &toks[2..] {
                if matches!(t, "remove-v" | "remove-c" | "witness" | "set" | "match" | "edge") {
                    cur = t;
                    sections.entry(cur).or_default();
                } else {
                    sections.entry(cur).or_default().push(t);
                }
            }
            let get = |k: &str| sections.get(k).cloned().unwrap_or_default();
            let vertex = |t: &str| -> Result<usize> {
                t.parse::<usize>()
                    .ok()
                    .filter(|&v| v < inst.n())
                    .ok_or_else(|| err(&format!("bad vertex {t:?}")))
            };
            let color = |t: &str| -> Result<usize> {
                t.parse::<u32>()
                    .ok()
                    .and_then(|l| inst.color_id(l))
                    .ok_or_else(|| err(&format!("unknown color {t:?}")))
            };
            let pair = |t| pair_at(line, t);
            let vs = get("remove-v").into_iter().map(vertex).collect::<Result<Vec<_>>>()?;
            let cs = get("remove-c").into_iter().map(color).collect::<Result<Vec<_>>>()?;
            let step = match toks[1] {
                "1" if vs.len() == 1 => Step::LowDegree { vertex: vs[0] },
                "2" => Step::Crown {
                    set: get("set").into_iter().map(vertex).collect::<Result<_>>()?,
                    removed: vs,
                    matching: get("match")
                        .into_iter()
                        .map(|t| pair(t).and_then(|(a, b)| Ok((vertex(a)?, vertex(b)?))))
                        .collect::<Result<_>>()?,
                },
                "3" if cs.len() == 1 => Step::PrecoloredClique { color: cs[0], class: vs },
                "4" => Step::MatchingTrim {
                    removed: vs,
                    colors: cs,
                    matching: get("match")
                        .into_iter()
                        .map(|t| pair(t).and_then(|(a, b)| Ok((vertex(a)?, color(b)?))))
                        .collect::<Result<_>>()?,
                },
                r @ ("R1" | "R2" | "R3") => {
                    let e = get("edge");
                    let (u, v) = pair(e.first().ok_or_else(|| err("missing edge"))?)?;
                    Step::AddEdge { rule: r[1..].parse().unwrap(), u: vertex(u)?, v: vertex(v)? }
                }
                other => return Err(err(&format!("malformed rule {other:?}"))),
            };
            trace.steps.push(step);
        }
        Ok(trace)
    }
}
