//! Graph ingestion.
//!
//! Two text formats, both 1-indexed with `#` comments (DIMACS also accepts `c`
//! comment lines):
//!
//! ```text
//! # edge list            c DIMACS-like
//! n 4                    p edge 4 3
//! 1 2                    e 1 2
//! 1 3                    e 1 3
//! 2 3                    e 2 3
//! ```

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn vertex(tok: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing endpoint"))?;
    let v: usize = tok.parse().map_err(|_| parse_err(line, format!("bad vertex {tok:?}")))?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Builds the graph, reporting loops and duplicates against the offending line.
fn assemble(n: usize, edges: Vec<(usize, (usize, usize))>) -> Result<Graph> {
    let mut seen = std::collections::HashSet::new();
    for &(line, (u, v)) in &edges {
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, format!("duplicate edge {{{}, {}}}", u + 1, v + 1)));
        }
    }
    Graph::new(n, edges.into_iter().map(|(_, e)| e))
}

fn parse_count(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing vertex count"))?;
    let n: usize = tok.parse().map_err(|_| parse_err(line, format!("bad vertex count {tok:?}")))?;
    if n == 0 {
        return Err(parse_err(line, "vertex count must be positive"));
    }
    Ok(n)
}

/// Plain edge list: `n <count>` header, then `u v` pairs.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("n") {
        return Err(parse_err(hline, "expected header `n <count>`"));
    }
    let n = parse_count(toks.next(), hline)?;
    if toks.next().is_some() {
        return Err(parse_err(hline, "trailing tokens in header"));
    }
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        let u = vertex(toks.next(), n, ln)?;
        let v = vertex(toks.next(), n, ln)?;
        if toks.next().is_some() {
            return Err(parse_err(ln, "expected exactly two endpoints"));
        }
        edges.push((ln, (u, v)));
    }
    assemble(n, edges)
}

/// DIMACS-like: `p edge <n> <e>` header, then `e u v` lines.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut declared = 0usize;
    let mut edges = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err(ln, "second `p` header"));
                }
                if toks.next() != Some("edge") {
                    return Err(parse_err(ln, "expected `p edge <n> <e>`"));
                }
                n = Some(parse_count(toks.next(), ln)?);
                let e = toks.next().ok_or_else(|| parse_err(ln, "missing edge count"))?;
                declared = e.parse().map_err(|_| parse_err(ln, format!("bad edge count {e:?}")))?;
            }
            Some("e") => {
                let n = n.ok_or_else(|| parse_err(ln, "edge before `p` header"))?;
                let u = vertex(toks.next(), n, ln)?;
                let v = vertex(toks.next(), n, ln)?;
                if toks.next().is_some() {
                    return Err(parse_err(ln, "expected `e u v`"));
                }
                edges.push((ln, (u, v)));
            }
            Some(tok) => return Err(parse_err(ln, format!("unknown line type {tok:?}"))),
            None => unreachable!(),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing `p edge` header"))?;
    if edges.len() != declared {
        return Err(parse_err(0, format!("header declares {declared} edges, found {}", edges.len())));
    }
    assemble(n, edges)
}

/// Dispatches on the first content line: `p ...` means DIMACS.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let dimacs =
        content_lines(text).find(|(_, l)| !l.starts_with("c ") && *l != "c").is_some_and(|(_, l)| l.starts_with('p'));
    if dimacs {
        parse_dimacs(text)
    } else {
        parse_edge_list(text)
    }
}

/// Serializes in the plain edge-list format.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_comments() {
        let g = parse_edge_list("# triangle plus isolated\nn 4\n1 2\n1 3 # inline\n\n2 3\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn dimacs_basic() {
        let g = parse_dimacs("c example\np edge 4 2\ne 1 2\ne 3 4\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(parse_graph("c hi\np edge 4 2\ne 1 2\ne 3 4\n").unwrap(), g);
    }

    #[test]
    fn rejects_out_of_range() {
        let err = parse_dimacs("p edge 4 1\ne 1 9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(parse_edge_list("n 4\n0 1\n").is_err());
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(parse_edge_list("n 3\n2 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("n 3\n1 2\n2 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_dimacs("p edge 3 2\ne 1 2\ne 1 2\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn rejects_bad_headers() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("4\n1 2\n").is_err());
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 3 2\ne 1 2\n").is_err());
        assert!(parse_dimacs("p col 3 0\n").is_err());
    }

    #[test]
    fn round_trip() {
        let g = Graph::new(5, [(0, 4), (1, 2)]).unwrap();
        assert_eq!(parse_graph(&write_edge_list(&g)).unwrap(), g);
    }
}
