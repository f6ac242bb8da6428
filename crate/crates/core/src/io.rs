//! Edge-list and DIMACS readers, edge-list writer.
//!
//! Edge-list: a header line `n m`, then `m` lines `u v` with 0-based
//! endpoints. Lines starting with `#` are comments. DIMACS (`p edge n m`,
//! `e u v`, 1-based, `c` comments) is accepted on input and detected from the
//! first non-comment line. Output is always edge-list.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses either dialect.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'));
    match first {
        Some(l) if l.starts_with('p') => parse_dimacs(text),
        _ => parse_edge_list(text),
    }
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

fn parse_pair(line_no: usize, fields: &[&str], what: &str) -> Result<(usize, usize)> {
    if fields.len() != 2 {
        return Err(parse_err(
            line_no,
            format!("expected two integers ({what}), found {} fields", fields.len()),
        ));
    }
    let a = fields[0]
        .parse::<usize>()
        .map_err(|_| parse_err(line_no, format!("not a non-negative integer: {:?}", fields[0])))?;
    let b = fields[1]
        .parse::<usize>()
        .map_err(|_| parse_err(line_no, format!("not a non-negative integer: {:?}", fields[1])))?;
    Ok((a, b))
}

fn check_edge(line_no: usize, u: usize, v: usize, n: usize) -> Result<()> {
    if u >= n || v >= n {
        return Err(parse_err(
            line_no,
            format!("endpoint out of range: {} not in [0, {n})", u.max(v)),
        ));
    }
    if u == v {
        return Err(parse_err(line_no, format!("self-loop on vertex {u}")));
    }
    Ok(())
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        last_line = line_no;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                let (n, m) = parse_pair(line_no, &fields, "header `n m`")?;
                header = Some((n, m, line_no));
            }
            Some((n, _, _)) => {
                let (u, v) = parse_pair(line_no, &fields, "edge `u v`")?;
                check_edge(line_no, u, v, n)?;
                edges.push((u, v));
            }
        }
    }
    let (n, m, header_line) = header.ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    if edges.len() != m {
        return Err(parse_err(
            if edges.len() > m { last_line } else { header_line },
            format!("header announces {m} edge lines, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if n.is_some() {
                    return Err(parse_err(line_no, "duplicate problem line"));
                }
                if fields.len() != 4 || !matches!(fields[1], "edge" | "col") {
                    return Err(parse_err(line_no, "expected `p edge n m`"));
                }
                let (nv, _) = parse_pair(line_no, &fields[2..], "`n m`")?;
                n = Some(nv);
            }
            "e" => {
                let nv = n.ok_or_else(|| parse_err(line_no, "edge before problem line"))?;
                let (u, v) = parse_pair(line_no, &fields[1..], "edge `e u v`")?;
                if u == 0 || v == 0 {
                    return Err(parse_err(line_no, "DIMACS vertices are 1-based"));
                }
                check_edge(line_no, u - 1, v - 1, nv)?;
                edges.push((u - 1, v - 1));
            }
            other => return Err(parse_err(line_no, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing problem line `p edge n m`"))?;
    Graph::new(n, edges)
}

/// Edge-list text with edges sorted lexicographically.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    std::fs::write(path, to_edge_list(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_and_triangle() {
        let p3 = parse_graph("3 2\n0 1\n1 2").unwrap();
        assert_eq!(p3, Graph::path(3));
        let k3 = parse_graph("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(k3, Graph::complete(3));
    }

    #[test]
    fn rejects_self_loop_with_line() {
        let err = parse_graph("2 1\n0 0").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("self-loop"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_out_of_range_and_garbage() {
        assert!(matches!(
            parse_graph("2 1\n0 5"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n# c\n0 x"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_graph("3 2\n0 1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_graph("3 3\n0 1\n1 0\n1 2").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn comments_are_skipped() {
        let g = parse_graph("# a comment\n3 1\n# another\n0 2\n").unwrap();
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn dimacs_dialect() {
        let g = parse_graph("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert!(matches!(
            parse_graph("p edge 2 1\ne 0 1"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn writer_is_sorted() {
        let g = Graph::new(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(to_edge_list(&g), "3 2\n0 1\n1 2\n");
    }
}
