//! Text formats.
//!
//! A graph file starts with `n m`, followed by `m` edge lines `u v`
//! (plain) or `u v R` / `u v B` (coloured). Indices are 0-based and `#`
//! starts a comment. A model file is a graph file followed by
//! `part i: v ...` lines and optional `root i: v` lines.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Edge, Graph, Vertex};

/// Either kind of graph read from a text file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFile {
    Plain(Graph),
    Colored(ColoredGraph),
}

impl GraphFile {
    pub fn graph(&self) -> &Graph {
        match self {
            GraphFile::Plain(g) => g,
            GraphFile::Colored(cg) => cg.graph(),
        }
    }
}

/// Raw contents of a model file; validated by [`crate::minor::MinorModel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub graph: Graph,
    pub parts: Vec<Vec<Vertex>>,
    pub roots: Option<Vec<Vertex>>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer, got `{tok}`")))
}

fn parse_header_and_edges<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<GraphFile> {
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hl, "header must be `n m`"));
    }
    let n = parse_usize(toks[0], hl)?;
    let m = parse_usize(toks[1], hl)?;

    let mut plain: Vec<Edge> = Vec::with_capacity(m);
    let mut colored: Vec<(Vertex, Vertex, Color)> = Vec::with_capacity(m);
    let mut last_line = hl;
    for k in 0..m {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(last_line, format!("expected {m} edges, found {k}")))?;
        last_line = ln;
        let toks: Vec<&str> = l.split_whitespace().collect();
        let (u, v) = match toks.as_slice() {
            [u, v] | [u, v, _] => (parse_usize(u, ln)?, parse_usize(v, ln)?),
            _ => return Err(parse_err(ln, "edge line must be `u v` or `u v R|B`")),
        };
        if u == v {
            return Err(parse_err(ln, format!("self-loop at {u}")));
        }
        if u >= n || v >= n {
            return Err(parse_err(ln, format!("vertex out of range (n = {n})")));
        }
        match toks.get(2) {
            None => plain.push((u, v)),
            Some(&"R") => colored.push((u, v, Color::Red)),
            Some(&"B") => colored.push((u, v, Color::Blue)),
            Some(c) => return Err(parse_err(ln, format!("unknown colour `{c}`"))),
        }
        if !plain.is_empty() && !colored.is_empty() {
            return Err(parse_err(ln, "mixed coloured and uncoloured edges"));
        }
    }
    let wrap = |e: Error| match e {
        Error::InvalidGraph(msg) => parse_err(last_line, msg),
        other => other,
    };
    if colored.is_empty() && m > 0 {
        Ok(GraphFile::Plain(Graph::new(n, plain).map_err(wrap)?))
    } else if m == 0 {
        Ok(GraphFile::Plain(Graph::empty(n)))
    } else {
        Ok(GraphFile::Colored(ColoredGraph::new(n, colored).map_err(wrap)?))
    }
}

/// Parses a plain or coloured graph file. An edgeless file parses as plain.
pub fn parse_graph_file(input: &str) -> Result<GraphFile> {
    let mut lines = content_lines(input);
    let g = parse_header_and_edges(&mut lines)?;
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after the edge list"));
    }
    Ok(g)
}

/// Parses an uncoloured graph; colours, if present, are dropped.
pub fn parse_graph(input: &str) -> Result<Graph> {
    Ok(parse_graph_file(input)?.graph().clone())
}

/// Parses a coloured graph. An edgeless file is accepted.
pub fn parse_colored(input: &str) -> Result<ColoredGraph> {
    match parse_graph_file(input)? {
        GraphFile::Colored(cg) => Ok(cg),
        GraphFile::Plain(g) if g.edge_count() == 0 => Ok(ColoredGraph::monochromatic(g, Color::Red)),
        GraphFile::Plain(_) => Err(parse_err(1, "expected coloured edges (`u v R` or `u v B`)")),
    }
}

fn parse_indexed(rest: &str, ln: usize) -> Result<(usize, Vec<usize>)> {
    let (idx, verts) = rest
        .split_once(':')
        .ok_or_else(|| parse_err(ln, "expected `<index>: <vertices>`"))?;
    let idx = parse_usize(idx.trim(), ln)?;
    let verts = verts
        .split_whitespace()
        .map(|t| parse_usize(t, ln))
        .collect::<Result<Vec<_>>>()?;
    Ok((idx, verts))
}

/// Parses a model file. Parts must be numbered `0..k` in order; roots are
/// either absent or given for every part.
pub fn parse_model(input: &str) -> Result<ModelFile> {
    let mut lines = content_lines(input);
    let graph = parse_header_and_edges(&mut lines)?.graph().clone();
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    let mut roots: Vec<Option<Vertex>> = Vec::new();
    for (ln, l) in lines {
        if let Some(rest) = l.strip_prefix("part") {
            let (idx, verts) = parse_indexed(rest, ln)?;
            if idx != parts.len() {
                return Err(parse_err(ln, format!("expected part {}, got part {idx}", parts.len())));
            }
            if verts.is_empty() {
                return Err(parse_err(ln, "empty part"));
            }
            if let Some(&v) = verts.iter().find(|&&v| v >= graph.vertex_count()) {
                return Err(parse_err(ln, format!("vertex {v} out of range")));
            }
            parts.push(verts);
        } else if let Some(rest) = l.strip_prefix("root") {
            let (idx, verts) = parse_indexed(rest, ln)?;
            if verts.len() != 1 {
                return Err(parse_err(ln, "a root line names exactly one vertex"));
            }
            if roots.len() <= idx {
                roots.resize(idx + 1, None);
            }
            roots[idx] = Some(verts[0]);
        } else {
            return Err(parse_err(ln, format!("unexpected line `{l}`")));
        }
    }
    let roots = if roots.is_empty() {
        None
    } else {
        if roots.len() != parts.len() || roots.iter().any(Option::is_none) {
            return Err(parse_err(0, "roots must be given for every part or for none"));
        }
        Some(roots.into_iter().map(Option::unwrap).collect())
    };
    Ok(ModelFile { graph, parts, roots })
}

/// Parses `i j` pairs, one per line.
pub fn parse_edge_pairs(input: &str) -> Result<Vec<Edge>> {
    content_lines(input)
        .map(|(ln, l)| {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks.as_slice() {
                [a, b] => Ok((parse_usize(a, ln)?, parse_usize(b, ln)?)),
                _ => Err(parse_err(ln, "expected `i j`")),
            }
        })
        .collect()
}

/// Serialises a model in the model file format.
pub fn format_model(graph: &Graph, parts: &[Vec<Vertex>], roots: &[Vertex]) -> String {
    let mut s = graph.to_string();
    for (i, p) in parts.iter().enumerate() {
        let vs: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        writeln!(s, "part {i}: {}", vs.join(" ")).unwrap();
    }
    for (i, r) in roots.iter().enumerate() {
        writeln!(s, "root {i}: {r}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_colored_with_comments() {
        let cg = parse_colored("# red triangle\n3 3\n0 1 R\n1 2 R # edge\n\n0 2 R\n").unwrap();
        assert_eq!(cg.red_count(), 3);
        assert_eq!(cg.color(2, 0), Some(Color::Red));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_graph("2 1\n0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("2 2\n0 1\n1 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("2 1\n0 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n1 2 R\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("3 1\n0 1 G\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("3 1\n0 1\n1 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_colored("2 1\n0 1\n").is_err());
    }

    #[test]
    fn model_file() {
        let m = parse_model("4 4\n0 1\n1 2\n2 3\n3 0\npart 0: 0 1\npart 1: 2\npart 2: 3\n").unwrap();
        assert_eq!(m.parts, vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(m.roots, None);
        let text = format_model(&m.graph, &m.parts, &[1, 2, 3]);
        let back = parse_model(&text).unwrap();
        assert_eq!(back.roots, Some(vec![1, 2, 3]));
        assert_eq!(back.graph, m.graph);
        assert!(parse_model("2 1\n0 1\npart 1: 0\n").is_err());
    }

    proptest! {
        #[test]
        fn display_round_trips(n in 1usize..12, seed in any::<u64>()) {
            let mut x = seed;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    match x >> 62 {
                        0 => edges.push((u, v, Color::Red)),
                        1 => edges.push((u, v, Color::Blue)),
                        _ => {}
                    }
                }
            }
            let cg = ColoredGraph::new(n, edges).unwrap();
            prop_assert_eq!(parse_colored(&cg.to_string()).unwrap(), cg.clone());
            prop_assert_eq!(parse_graph(&cg.graph().to_string()).unwrap(), cg.graph().clone());
        }
    }
}
