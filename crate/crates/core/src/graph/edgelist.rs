use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header at line {line}: expected `p edge <V> <E>`")]
    MalformedHeader { line: usize },
    #[error("malformed edge at line {line}: expected `e <u> <v>`")]
    MalformedEdge { line: usize },
    #[error("vertex index out of range at line {line}")]
    OutOfRange { line: usize },
    #[error("self-loop at line {line}")]
    SelfLoop { line: usize },
    #[error("header declares {declared} edges but {found} were read")]
    EdgeCountMismatch { declared: usize, found: usize },
}

impl EdgeListError {
    /// 1-based line the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            EdgeListError::MalformedHeader { line }
            | EdgeListError::MalformedEdge { line }
            | EdgeListError::OutOfRange { line }
            | EdgeListError::SelfLoop { line } => Some(*line),
            _ => None,
        }
    }
}

/// Writes `p edge V E` followed by one `e u v` line per edge.
pub fn write_edge_list<W: Write>(graph: &Graph, mut sink: W) -> io::Result<()> {
    writeln!(
        sink,
        "p edge {} {}",
        graph.vertex_count(),
        graph.edge_count()
    )?;
    for &(u, v) in graph.edges() {
        writeln!(sink, "e {u} {v}")?;
    }
    sink.flush()
}

/// Parses the format produced by [`write_edge_list`]. Lines starting with
/// `c` are comments.
pub fn read_edge_list<R: BufRead>(source: R) -> Result<Graph, EdgeListError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.starts_with('c') {
            continue;
        }
        let mut fields = line.split(' ');
        match header {
            None => {
                let parsed = match (fields.next(), fields.next(), fields.next(), fields.next()) {
                    (Some("p"), Some("edge"), Some(v), Some(e)) if fields.next().is_none() => {
                        parse_index(v).zip(parse_index(e))
                    }
                    _ => None,
                };
                let (v, e) = parsed.ok_or(EdgeListError::MalformedHeader { line: line_no })?;
                header = Some((v, e));
                edges.reserve(e.min(1 << 24));
            }
            Some((vertex_count, _)) => {
                let (u, v) = match (fields.next(), fields.next(), fields.next()) {
                    (Some("e"), Some(u), Some(v)) if fields.next().is_none() => {
                        parse_index(u).zip(parse_index(v))
                    }
                    _ => None,
                }
                .ok_or(EdgeListError::MalformedEdge { line: line_no })?;
                if u >= vertex_count || v >= vertex_count {
                    return Err(EdgeListError::OutOfRange { line: line_no });
                }
                if u == v {
                    return Err(EdgeListError::SelfLoop { line: line_no });
                }
                edges.push((u, v));
            }
        }
    }
    let (vertex_count, declared) = header.ok_or(EdgeListError::MissingHeader)?;
    if declared != edges.len() {
        return Err(EdgeListError::EdgeCountMismatch {
            declared,
            found: edges.len(),
        });
    }
    Graph::new(vertex_count, edges).map_err(|e| match e {
        // unreachable after the per-line checks, kept for completeness
        GraphError::SelfLoop { index, .. } | GraphError::OutOfRange { index, .. } => {
            EdgeListError::MalformedEdge { line: index + 2 }
        }
    })
}

/// ASCII decimal only: no sign, no leading `+`, no whitespace.
fn parse_index(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
