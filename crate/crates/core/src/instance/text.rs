//! Line-oriented text formats for instances and colorings.

use std::collections::HashSet;
use std::fmt::Write;

use super::{Coloring, Instance, InstanceSpec, Tag};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| perr(line, format!("expected {what}, found {tok:?}")))
}

/// Splits `<head…> : <tail…>` at the colon token.
fn split_colon<'a>(toks: &'a [&'a str], line: usize) -> Result<(&'a [&'a str], &'a [&'a str])> {
    let pos = toks.iter().position(|&t| t == ":").ok_or_else(|| perr(line, "missing ':'"))?;
    Ok((&toks[..pos], &toks[pos + 1..]))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut spec: Option<InstanceSpec> = None;
    let mut declared_m = 0;
    let mut seen_edges = HashSet::new();
    let mut seen_lists = HashSet::new();
    let mut tag_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some(&head) = toks.first() else { continue };
        if head == "p" {
            if spec.is_some() {
                return Err(perr(line, "second header line"));
            }
            if toks.len() != 4 || toks[1] != "listcolor" {
                return Err(perr(line, "header must read `p listcolor <n> <m>`"));
            }
            spec = Some(InstanceSpec::new(num(toks[2], line, "vertex count")?));
            declared_m = num(toks[3], line, "edge count")?;
            continue;
        }
        let s = spec.as_mut().ok_or_else(|| perr(line, "content before the `p listcolor` header"))?;
        let n = s.n;
        let vertex = |tok: &str| -> Result<usize> {
            let v: usize = num(tok, line, "vertex id")?;
            if v >= n {
                return Err(perr(line, format!("vertex {v} out of range 0..{n}")));
            }
            Ok(v)
        };
        match head {
            "e" => {
                if toks.len() != 3 {
                    return Err(perr(line, "edge line must read `e <u> <v>`"));
                }
                let (u, v) = (vertex(toks[1])?, vertex(toks[2])?);
                if u == v {
                    return Err(perr(line, format!("self-loop at {u}")));
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(perr(line, format!("duplicate edge {u}-{v}")));
                }
                s.edges.push((u, v));
            }
            "l" => {
                let (lhs, rhs) = split_colon(&toks[1..], line)?;
                if lhs.len() != 1 {
                    return Err(perr(line, "list line must read `l <v> : <colors>`"));
                }
                let v = vertex(lhs[0])?;
                if !seen_lists.insert(v) {
                    return Err(perr(line, format!("second list for vertex {v}")));
                }
                let mut l = rhs.iter().map(|t| num(t, line, "color")).collect::<Result<Vec<u32>>>()?;
                l.sort_unstable();
                l.dedup();
                s.lists[v] = l;
            }
            "pre" => {
                if toks.len() != 3 {
                    return Err(perr(line, "pre-coloring line must read `pre <v> <c>`"));
                }
                s.precoloring.push((vertex(toks[1])?, num(toks[2], line, "color")?));
            }
            "mod" => {
                if s.modulator.is_some() {
                    return Err(perr(line, "second modulator line"));
                }
                s.modulator = Some(toks[1..].iter().map(|t| vertex(t)).collect::<Result<_>>()?);
            }
            "budget" => {
                if s.budget.is_some() {
                    return Err(perr(line, "second budget line"));
                }
                let (lhs, rhs) = split_colon(&toks[1..], line)?;
                if lhs.len() != 1 {
                    return Err(perr(line, "budget line must read `budget <q> : <colors>`"));
                }
                let q = num(lhs[0], line, "budget q")?;
                let mut b = rhs.iter().map(|t| num(t, line, "color")).collect::<Result<Vec<u32>>>()?;
                b.sort_unstable();
                b.dedup();
                s.budget = Some((q, b));
            }
            "tag" => {
                if toks.len() != 2 || tag_seen {
                    return Err(perr(line, "expected a single `tag <name>` line"));
                }
                tag_seen = true;
                s.tag = toks[1].parse::<Tag>().map_err(|m| perr(line, m))?;
            }
            "param" => {
                if toks.len() != 3 || toks[1] != "k" {
                    return Err(perr(line, "parameter line must read `param k <k>`"));
                }
                s.k = Some(num(toks[2], line, "parameter k")?);
            }
            other => return Err(perr(line, format!("unknown line type {other:?}"))),
        }
    }
    let spec = spec.ok_or_else(|| perr(0, "missing `p listcolor` header"))?;
    if spec.edges.len() != declared_m {
        return Err(perr(0, format!("header declares {declared_m} edges, found {}", spec.edges.len())));
    }
    spec.build()
}

/// Canonical text: edges sorted, every vertex's list ascending, sections in
/// a fixed order. The `tag` line is omitted for the default tag.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let n = inst.n();
    let _ = writeln!(out, "p listcolor {n} {}", inst.graph.edge_count());
    for (u, v) in inst.graph.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    for v in 0..n {
        out.push_str(&format!("l {v} :"));
        for c in &inst.lists[v] {
            let _ = write!(out, " {}", inst.colors[c]);
        }
        out.push('\n');
    }
    for v in 0..n {
        if let Some(c) = inst.precoloring[v] {
            let _ = writeln!(out, "pre {v} {}", inst.colors[c]);
        }
    }
    if let Some(d) = &inst.modulator {
        out.push_str("mod");
        for v in d {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    if let Some(b) = &inst.budget {
        let _ = write!(out, "budget {} :", b.q);
        for c in &b.colors {
            let _ = write!(out, " {}", inst.colors[c]);
        }
        out.push('\n');
    }
    if inst.tag != Tag::Lccm {
        let _ = writeln!(out, "tag {}", inst.tag);
    }
    if let Some(k) = inst.k {
        let _ = writeln!(out, "param k {k}");
    }
    out
}

/// Reads `c <v> <label>` lines against `inst`'s vertices and colors.
pub fn parse_coloring(inst: &Instance, text: &str) -> Result<Coloring> {
    let mut col = Coloring::empty(inst.n());
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 3 || toks[0] != "c" {
            return Err(perr(line, "coloring line must read `c <v> <color>`"));
        }
        let v: usize = num(toks[1], line, "vertex id")?;
        if v >= inst.n() {
            return Err(perr(line, format!("vertex {v} out of range 0..{}", inst.n())));
        }
        let label: u32 = num(toks[2], line, "color")?;
        let c = inst
            .color_id(label)
            .ok_or_else(|| perr(line, format!("color {label} does not occur in the instance")))?;
        if col.get(v).is_some_and(|prev| prev != c) {
            return Err(perr(line, format!("vertex {v} colored twice")));
        }
        col.set(v, c);
    }
    Ok(col)
}

pub fn write_coloring(inst: &Instance, col: &Coloring) -> String {
    let mut out = String::new();
    for (v, c) in col.0.iter().enumerate() {
        if let Some(c) = c {
            let _ = writeln!(out, "c {v} {}", inst.colors[*c]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_vertex() {
        let inst = parse_instance("p listcolor 1 0\nl 0 : 1\n").unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.colors, vec![1]);
        assert_eq!(inst.lists[0].iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn rejects_out_of_range_edge_with_line_number() {
        let err = parse_instance("p listcolor 2 1\n# comment\ne 0 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn rejects_malformed_lines() {
        for text in [
            "l 0 : 1\n",
            "p listcolor 1 0\nl 0 1\n",
            "p listcolor 1 0\nx 0\n",
            "p listcolor 1 1\n",
            "p listcolor 2 2\ne 0 1\ne 1 0\n",
            "p listcolor 1 0\ntag FOO\n",
        ] {
            assert!(matches!(parse_instance(text), Err(Error::Parse { .. })), "{text:?}");
        }
    }

    #[test]
    fn canonical_round_trip() {
        let text = "p listcolor 3 2\ne 0 1\ne 1 2\nl 0 : 1 2\nl 1 : 2\nl 2 : 1 9\npre 1 2\nmod 0\nbudget 1 : 9\ntag BUDGET\nparam k 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(write_instance(&inst), text);
        let shuffled = "p listcolor 3 2\nparam k 1\ntag BUDGET\nbudget 1 : 9\nmod 0\ne 2 1\nl 2 : 9 1\nl 1 : 2\npre 1 2\nl 0 : 2 1\ne 1 0\n";
        assert_eq!(parse_instance(shuffled).unwrap(), inst);
        assert_eq!(write_instance(&parse_instance(shuffled).unwrap()), text);
    }

    #[test]
    fn empty_graph_writes_header_and_lists_only() {
        let inst = parse_instance("p listcolor 2 0\nl 0 : 3\nl 1 : 4\n").unwrap();
        assert_eq!(write_instance(&inst), "p listcolor 2 0\nl 0 : 3\nl 1 : 4\n");
        let other = parse_instance("p listcolor 2 0\nl 0 : 3\nl 1 : 5\n").unwrap();
        assert_ne!(write_instance(&inst), write_instance(&other));
    }

    #[test]
    fn coloring_round_trip() {
        let inst = parse_instance("p listcolor 2 1\ne 0 1\nl 0 : 5 6\nl 1 : 6\n").unwrap();
        let col = parse_coloring(&inst, "c 0 5\nc 1 6\n").unwrap();
        assert_eq!(col.0, vec![Some(0), Some(1)]);
        assert_eq!(write_coloring(&inst, &col), "c 0 5\nc 1 6\n");
        assert!(parse_coloring(&inst, "c 0 7\n").is_err());
        assert!(parse_coloring(&inst, "c 0 5\nc 0 6\n").is_err());
    }
}
