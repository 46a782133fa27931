//! Plain-text board formats.
//!
//! Hypergraphs use `p hg <n> <m>` followed by `e v1 .. vk` lines and optional
//! `n <id> <label>` lines; graphs use DIMACS `p edge <n> <m>` with `e u v` lines.
//! Lines starting with `c` are comments.

use std::fmt::Write as _;

use thiserror::Error;

use super::{BoardError, Graph, Hypergraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing problem line")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Board(#[from] BoardError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_num(tok: &str, line: usize) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, got {tok:?}")))
}

struct Header {
    n: usize,
    m: usize,
}

fn parse_header(toks: &[&str], kind: &str, line: usize) -> Result<Header, FormatError> {
    match toks {
        ["p", k, n, m] if *k == kind => Ok(Header {
            n: parse_num(n, line)?,
            m: parse_num(m, line)?,
        }),
        _ => Err(syntax(line, format!("expected \"p {kind} <n> <m>\""))),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    let mut header: Option<Header> = None;
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    let mut labels: Vec<(Vertex, String, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                header = Some(parse_header(&toks, "hg", line)?);
            }
            "e" => {
                if header.is_none() {
                    return Err(FormatError::MissingHeader);
                }
                if toks.len() < 2 {
                    return Err(syntax(line, "empty edge"));
                }
                let edge = toks[1..]
                    .iter()
                    .map(|t| parse_num(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                edges.push(edge);
            }
            "n" => {
                if header.is_none() {
                    return Err(FormatError::MissingHeader);
                }
                if toks.len() < 3 {
                    return Err(syntax(line, "expected \"n <id> <label>\""));
                }
                let id = parse_num(toks[1], line)?;
                labels.push((id, toks[2..].join(" "), line));
            }
            other => return Err(syntax(line, format!("unknown line type {other:?}"))),
        }
    }
    let header = header.ok_or(FormatError::MissingHeader)?;
    if edges.len() != header.m {
        return Err(FormatError::EdgeCount {
            declared: header.m,
            found: edges.len(),
        });
    }
    let mut h = Hypergraph::new(header.n, edges)?;
    for (id, label, _) in labels {
        h.set_label(id, label)?;
    }
    let dups = h.duplicate_edges();
    if !dups.is_empty() {
        log::warn!("hypergraph has {} duplicate edge(s): {:?}", dups.len(), dups);
    }
    Ok(h)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "p hg {} {}", h.num_vertices(), h.num_edges()).unwrap();
    for e in h.edges() {
        out.push('e');
        for v in e {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for (id, label) in h.labels() {
        writeln!(out, "n {id} {label}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut g: Option<(Graph, usize)> = None;
    let mut count = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if g.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                let h = parse_header(&toks, "edge", line)?;
                g = Some((Graph::new(h.n), h.m));
            }
            "e" => {
                let (graph, _) = g.as_mut().ok_or(FormatError::MissingHeader)?;
                if toks.len() != 3 {
                    return Err(syntax(line, "expected \"e <u> <v>\""));
                }
                let u = parse_num(toks[1], line)?;
                let v = parse_num(toks[2], line)?;
                graph.add_edge(u, v)?;
                count += 1;
            }
            other => return Err(syntax(line, format!("unknown line type {other:?}"))),
        }
    }
    let (graph, m) = g.ok_or(FormatError::MissingHeader)?;
    if count != m {
        return Err(FormatError::EdgeCount {
            declared: m,
            found: count,
        });
    }
    Ok(graph)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.num_vertices(), g.num_edges()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_round_trip() {
        let text = "c demo\np hg 4 2\ne 1 2\ne 2 3 4\nn 1 x(1)\n";
        let h = parse_hypergraph(text).unwrap();
        assert_eq!(h.num_vertices(), 4);
        assert_eq!(h.edges(), &[vec![1, 2], vec![2, 3, 4]]);
        assert_eq!(h.label(1), Some("x(1)"));
        let out = write_hypergraph(&h);
        assert_eq!(out, "p hg 4 2\ne 1 2\ne 2 3 4\nn 1 x(1)\n");
        assert_eq!(parse_hypergraph(&out).unwrap(), h);
    }

    #[test]
    fn hypergraph_errors() {
        assert_eq!(parse_hypergraph("e 1\n"), Err(FormatError::MissingHeader));
        assert!(matches!(
            parse_hypergraph("p hg 2 2\ne 1 2\n"),
            Err(FormatError::EdgeCount { .. })
        ));
        assert!(matches!(
            parse_hypergraph("p hg 2 1\ne 1 3\n"),
            Err(FormatError::Board(BoardError::OutOfRange { .. }))
        ));
        assert!(matches!(
            parse_hypergraph("p hg 2 1\ne 1 x\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn graph_round_trip() {
        let g = parse_graph("p edge 3 2\ne 2 1\ne 2 3\n").unwrap();
        let out = write_graph(&g);
        assert_eq!(out, "p edge 3 2\ne 1 2\ne 2 3\n");
        assert_eq!(parse_graph(&out).unwrap(), g);
        assert!(parse_graph("p edge 2 1\ne 1 1\n").is_err());
    }
}
