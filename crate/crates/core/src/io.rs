//! Text formats. Vertex ids are 1-based in files and 0-based in memory.
//!
//! Digraphs:
//! ```text
//! c comment
//! p digraph <n> <m>
//! a <u> <v>
//! ```
//! Formulas use DIMACS CNF (`p cnf <vars> <clauses>`, clauses terminated by
//! `0`). Undirected graphs use `p edge <n> <m>` and `e <u> <v>` lines.

use std::collections::HashSet;
use std::fmt::Write;

use crate::digraph::{Digraph, VertexOrdering};
use crate::error::{Error, Result};
use crate::generators::cnf::{CnfFormula, Literal};
use crate::generators::families::Graph;

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(line, format!("malformed header: expected {what}")))
}

fn parse_id(tok: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, "expected two vertex ids"))?;
    let id: usize = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid vertex id '{tok}'")))?;
    if id == 0 || id > n {
        return Err(Error::parse(line, format!("vertex id {id} out of range 1..={n}")));
    }
    Ok(id - 1)
}

/// Header `p <kind> n m` followed by `m` lines `<tag> u v`.
fn parse_pairs(text: &str, kind: &str, tag: &str, directed: bool) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        let Some(first) = toks.next() else { continue };
        match first {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(line, "duplicate header"));
                }
                if toks.next() != Some(kind) {
                    return Err(Error::parse(line, format!("malformed header: expected 'p {kind} <n> <m>'")));
                }
                let n = parse_count(toks.next(), line, "vertex count")?;
                let m = parse_count(toks.next(), line, "arc count")?;
                if toks.next().is_some() {
                    return Err(Error::parse(line, "malformed header: trailing tokens"));
                }
                header = Some((n, m));
            }
            t if t == tag => {
                let (n, _) = header.ok_or_else(|| Error::parse(line, "missing header before data"))?;
                let u = parse_id(toks.next(), n, line)?;
                let v = parse_id(toks.next(), n, line)?;
                if toks.next().is_some() {
                    return Err(Error::parse(line, "trailing tokens"));
                }
                if u == v {
                    return Err(Error::parse(line, format!("self-loop at vertex {}", u + 1)));
                }
                let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
                if !seen.insert(key) {
                    return Err(Error::parse(line, format!("duplicate {} ({}, {})", if directed { "arc" } else { "edge" }, u + 1, v + 1)));
                }
                pairs.push((u, v));
            }
            other => return Err(Error::parse(line, format!("unexpected line type '{other}'"))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing header"))?;
    if pairs.len() != m {
        return Err(Error::parse(
            last_line.max(1),
            format!("header declares {m} lines but {} were given", pairs.len()),
        ));
    }
    Ok((n, pairs))
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let (n, arcs) = parse_pairs(text, "digraph", "a", true)?;
    Digraph::from_arcs(n, arcs)
}

/// Canonical text: header, then arcs in lexicographic order.
pub fn write_digraph(d: &Digraph) -> String {
    let mut out = format!("p digraph {} {}\n", d.n(), d.arc_count());
    for (u, v) in d.arcs() {
        writeln!(out, "a {} {}", u + 1, v + 1).expect("write to string");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, edges) = parse_pairs(text, "edge", "e", false)?;
    Graph::new(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut edges: Vec<(usize, usize)> = g.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    let mut out = format!("p edge {} {}\n", g.n, edges.len());
    for (u, v) in edges {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("write to string");
    }
    out
}

/// DIMACS CNF; clauses of one or two literals are padded, longer ones are
/// rejected.
pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start = 0;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line, "duplicate header"));
            }
            let mut toks = trimmed.split_whitespace().skip(1);
            if toks.next() != Some("cnf") {
                return Err(Error::parse(line, "malformed header: expected 'p cnf <vars> <clauses>'"));
            }
            let vars = parse_count(toks.next(), line, "variable count")?;
            let count = parse_count(toks.next(), line, "clause count")?;
            if toks.next().is_some() {
                return Err(Error::parse(line, "malformed header: trailing tokens"));
            }
            header = Some((vars, count));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| Error::parse(line, "missing header before clauses"))?;
        for tok in trimmed.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid literal '{tok}'")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(Error::parse(line, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > vars {
                return Err(Error::parse(line, format!("literal {lit} out of range for {vars} variables")));
            }
            if current.is_empty() {
                current_start = line;
            }
            current.push(lit as Literal);
            if current.len() > 3 {
                return Err(Error::parse(current_start, "clause has more than 3 literals"));
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing header"))?;
    if !current.is_empty() {
        return Err(Error::parse(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(Error::parse(
            last_line.max(1),
            format!("header declares {count} clauses but {} were given", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses)
}

pub fn write_cnf(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.num_vars(), phi.num_clauses());
    for cl in phi.clauses() {
        writeln!(out, "{} {} {} 0", cl[0], cl[1], cl[2]).expect("write to string");
    }
    out
}

/// Whitespace-separated 1-based vertex ids.
pub fn parse_ordering(text: &str) -> Result<VertexOrdering> {
    let mut seq = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        for tok in raw.split_whitespace() {
            let id: usize = tok
                .parse()
                .map_err(|_| Error::parse(idx + 1, format!("invalid vertex id '{tok}'")))?;
            if id == 0 {
                return Err(Error::parse(idx + 1, "vertex ids start at 1"));
            }
            seq.push(id - 1);
        }
    }
    VertexOrdering::new(seq)
}

pub fn to_one_based(vertices: &[usize]) -> Vec<usize> {
    vertices.iter().map(|&v| v + 1).collect()
}

pub fn from_one_based(vertices: &[usize]) -> Result<Vec<usize>> {
    vertices
        .iter()
        .map(|&v| {
            v.checked_sub(1)
                .ok_or_else(|| Error::InvalidArgument("vertex ids start at 1".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_round_trip() {
        let text = "c triangle\np digraph 3 3\na 1 2\na 2 3\na 3 1\n";
        let d = parse_digraph(text).unwrap();
        assert_eq!(d, Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap());
        assert_eq!(parse_digraph(&write_digraph(&d)).unwrap(), d);
    }

    #[test]
    fn digraph_diagnostics() {
        let loop_err = parse_digraph("p digraph 2 1\na 1 1\n").unwrap_err();
        assert!(matches!(loop_err, Error::Parse { line: 2, ref msg } if msg.contains("self-loop")));
        let dup = parse_digraph("p digraph 2 2\na 1 2\na 1 2\n").unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 3, ref msg } if msg.contains("duplicate")));
        let range = parse_digraph("p digraph 2 1\na 1 3\n").unwrap_err();
        assert!(matches!(range, Error::Parse { line: 2, ref msg } if msg.contains("out of range")));
        let header = parse_digraph("p graph 2 1\n").unwrap_err();
        assert!(matches!(header, Error::Parse { line: 1, ref msg } if msg.contains("header")));
        assert!(parse_digraph("p digraph 2 2\na 1 2\n").is_err());
    }

    #[test]
    fn cnf_parsing() {
        let f = parse_cnf("p cnf 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(f.clauses(), &[[1, 2, 3]]);
        let f = parse_cnf("p cnf 1 1\n1 0\n").unwrap();
        assert_eq!(f.clauses(), &[[1, 1, 1]]);
        assert!(parse_cnf("p cnf 4 1\n1 2 3 4 0\n").is_err());
        assert!(parse_cnf("p cnf 2 1\n1 3 0\n").is_err());
        let f = parse_cnf("c x\np cnf 3 2\n1 -2\n 3 0 -1 0\n").unwrap();
        assert_eq!(parse_cnf(&write_cnf(&f)).unwrap(), f);
    }

    #[test]
    fn graph_round_trip() {
        let g = parse_graph("p edge 3 2\ne 1 2\ne 3 2\n").unwrap();
        assert!(g.has_edge(1, 2));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap().edges, vec![(0, 1), (1, 2)]);
        assert!(parse_graph("p edge 3 2\ne 1 2\ne 2 1\n").is_err());
    }
}
