//! Text formats for instances. Errors carry 1-based line numbers.
//!
//! Vertex and preference ids are 1-based in files and 0-based in memory.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::convex::{validate_table, ConvexSpec};
use crate::error::{Error, Result};
use crate::lattice::ProductLattice;
use crate::mincut::Digraph;
use crate::stable_matching::SmInstance;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("{what} `{tok}` is not a valid number")))
}

/// Non-blank lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MincutInput {
    pub graph: Digraph,
    pub s: usize,
    pub t: usize,
}

/// DIMACS max-flow: `p max n m`, `n id s`, `n id t`, `a u v [cap]`, `c ...`.
/// Capacities are ignored.
pub fn parse_dimacs(text: &str) -> Result<MincutInput> {
    let mut header: Option<(usize, usize)> = None;
    let (mut s, mut t) = (None, None);
    let mut arcs = Vec::new();
    let mut last = 0;
    for (line, l) in content_lines(text) {
        last = line;
        let mut tok = l.split_whitespace();
        match tok.next() {
            Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                if tok.next() != Some("max") {
                    return Err(parse_err(line, "expected `p max <n> <m>`"));
                }
                let n: usize = number(tok.next(), line, "vertex count")?;
                let m: usize = number(tok.next(), line, "arc count")?;
                if n < 2 {
                    return Err(parse_err(line, "need at least two vertices"));
                }
                header = Some((n, m));
            }
            Some("n") => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "node line before problem line"))?;
                let id = vertex(tok.next(), n, line)?;
                let slot = match tok.next() {
                    Some("s") => &mut s,
                    Some("t") => &mut t,
                    _ => return Err(parse_err(line, "node designator must be `s` or `t`")),
                };
                if slot.replace(id).is_some() {
                    return Err(parse_err(line, "terminal given twice"));
                }
            }
            Some("a") => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "arc line before problem line"))?;
                let u = vertex(tok.next(), n, line)?;
                let v = vertex(tok.next(), n, line)?;
                if let Some(cap) = tok.next() {
                    number::<i64>(Some(cap), line, "capacity")?;
                }
                arcs.push((u, v));
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type `{other}`"))),
            None => unreachable!("blank lines are skipped"),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(last.max(1), "missing problem line"))?;
    if arcs.len() != m {
        return Err(parse_err(last, format!("problem line declares {m} arcs, found {}", arcs.len())));
    }
    let s = s.ok_or_else(|| parse_err(last, "missing source `n <id> s`"))?;
    let t = t.ok_or_else(|| parse_err(last, "missing sink `n <id> t`"))?;
    if s == t {
        return Err(parse_err(last, "source and sink coincide"));
    }
    Ok(MincutInput {
        graph: Digraph::new(n, arcs)?,
        s,
        t,
    })
}

fn vertex(tok: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let id: usize = number(tok, line, "vertex id")?;
    if id == 0 || id > n {
        return Err(parse_err(line, format!("vertex {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

pub fn write_dimacs(g: &Digraph, s: usize, t: usize) -> String {
    let mut out = format!("p max {} {}\nn {} s\nn {} t\n", g.vertex_count(), g.arcs().len(), s + 1, t + 1);
    for &(u, v) in g.arcs() {
        let _ = writeln!(out, "a {} {} 1", u + 1, v + 1);
    }
    out
}

/// Line 1 `n`, then `n` U-side and `n` V-side permutations, 1-based.
pub fn parse_preferences(text: &str) -> Result<SmInstance> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or_else(|| parse_err(1, "empty preference file"))?;
    let mut tok = first.split_whitespace();
    let n: usize = number(tok.next(), line, "n")?;
    if n == 0 || tok.next().is_some() {
        return Err(parse_err(line, "first line must be a single positive n"));
    }
    let mut lists = Vec::with_capacity(2 * n);
    let mut last = line;
    for (line, l) in lines.by_ref().take(2 * n) {
        last = line;
        let mut seen = vec![false; n];
        let list = l
            .split_whitespace()
            .map(|x| {
                let id = vertex(Some(x), n, line)?;
                if std::mem::replace(&mut seen[id], true) {
                    return Err(parse_err(line, format!("{x} listed twice")));
                }
                Ok(id)
            })
            .collect::<Result<Vec<_>>>()?;
        if list.len() != n {
            return Err(parse_err(line, format!("expected {n} entries, found {}", list.len())));
        }
        lists.push(list);
    }
    if lists.len() != 2 * n {
        return Err(parse_err(last, format!("expected {} preference lines, found {}", 2 * n, lists.len())));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "trailing content after the V-side lists"));
    }
    let pref_v = lists.split_off(n);
    SmInstance::new(lists, pref_v)
}

pub fn write_preferences(inst: &SmInstance) -> String {
    let mut out = format!("{}\n", inst.n());
    for list in inst.pref_u().iter().chain(inst.pref_v()) {
        let row: Vec<String> = list.iter().map(|x| (x + 1).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// `{"orders": [[ids, increasing], ...], "members": [[id per order], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub orders: Vec<Vec<usize>>,
    pub members: Vec<Vec<usize>>,
}

pub fn parse_lattice(text: &str) -> Result<ProductLattice> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|e| parse_err(e.line().max(1), e.to_string()))?;
    ProductLattice::new(file.orders, file.members)
}

pub fn write_lattice(lat: &ProductLattice) -> String {
    let file = LatticeFile {
        orders: lat.orders().to_vec(),
        members: lat.members().iter().map(|m| lat.labels(m)).collect(),
    };
    serde_json::to_string(&file).expect("plain data serializes")
}

/// One value per line: `phi(0)`, `phi(1)`, ...
pub fn parse_table(text: &str) -> Result<ConvexSpec> {
    let values = content_lines(text)
        .map(|(line, l)| number::<i64>(Some(l), line, "table value"))
        .collect::<Result<Vec<_>>>()?;
    validate_table(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    const G1: &str = "c diamond\np max 4 4\nn 1 s\nn 4 t\na 1 2 1\na 1 3 1\na 2 4\na 3 4 7\n";

    #[test]
    fn dimacs_round_trip() {
        let input = parse_dimacs(G1).unwrap();
        assert_eq!((input.s, input.t), (0, 3));
        assert_eq!(input.graph.arcs(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let again = parse_dimacs(&write_dimacs(&input.graph, input.s, input.t)).unwrap();
        assert_eq!(again, input);
    }

    #[test]
    fn dimacs_errors_name_lines() {
        let bad_vertex = "p max 2 1\nn 1 s\nn 2 t\na 1 5\n";
        assert!(matches!(parse_dimacs(bad_vertex), Err(Error::Parse { line: 4, .. })));
        let no_header = "a 1 2\n";
        assert!(matches!(parse_dimacs(no_header), Err(Error::Parse { line: 1, .. })));
        let count = "p max 2 2\nn 1 s\nn 2 t\na 1 2\n";
        assert!(matches!(parse_dimacs(count), Err(Error::Parse { line: 4, .. })));
        let word = "p max 2 1\nn 1 s\nn 2 t\na 1 x\n";
        assert!(matches!(parse_dimacs(word), Err(Error::Parse { line: 4, .. })));
        assert!(parse_dimacs("p max 2 0\nn 1 s\n").is_err());
    }

    #[test]
    fn preferences() {
        let inst = parse_preferences("2\n1 2\n2 1\n\n2 1\n1 2\n").unwrap();
        assert_eq!(inst.pref_u(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(inst.pref_v(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(parse_preferences(&write_preferences(&inst)).unwrap(), inst);
        assert!(matches!(parse_preferences("2\n1 1\n2 1\n2 1\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_preferences("2\n1 2\n2 1\n2 1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_preferences("2\n1 2\n2 1\n2 1\n1\n"), Err(Error::Parse { line: 5, .. })));
    }

    #[test]
    fn lattice_json() {
        let lat = parse_lattice(r#"{"orders": [[1, 2, 3]], "members": [[1], [3]]}"#).unwrap();
        assert_eq!(lat.members().len(), 2);
        assert_eq!(parse_lattice(&write_lattice(&lat)).unwrap(), lat);
        assert!(matches!(parse_lattice("{\n\"orders\": 3\n}"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn tables() {
        assert!(parse_table("0\n0\n1\n3\n").is_ok());
        assert!(matches!(parse_table("0\n2\n1\n"), Err(Error::ConvexTable(_))));
        assert!(matches!(parse_table("0\nten\n"), Err(Error::Parse { line: 2, .. })));
    }
}
