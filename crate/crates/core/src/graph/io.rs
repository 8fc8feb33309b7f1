use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::{Graph, Vertex};
use crate::error::{Error, Result};

/// Compact vertex id -> id used in the source file. Ascending, so compaction
/// preserves the numeric order of the original ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdMap {
    original: Vec<u64>,
}

impl IdMap {
    pub fn identity(n: usize) -> IdMap {
        IdMap {
            original: (0..n as u64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original.is_empty()
    }

    #[inline]
    pub fn original(&self, v: Vertex) -> u64 {
        self.original[v as usize]
    }

    /// Compact id for an original id, if that id appears in the graph.
    pub fn compact(&self, original: u64) -> Option<Vertex> {
        self.original
            .binary_search(&original)
            .ok()
            .map(|i| i as Vertex)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.original
    }
}

/// Reads a whitespace-separated edge list from a file.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<(Graph, IdMap)> {
    let file = File::open(path)?;
    parse_edge_list(BufReader::new(file))
}

/// Parses an edge list: one `u v` pair per line, `#` lines are comments,
/// blank lines are skipped. Ids are compacted to `[0, n)` in numeric order.
pub fn parse_edge_list<R: Read>(source: R) -> Result<(Graph, IdMap)> {
    let reader = BufReader::new(source);
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let u = parse_id(tokens.next(), lineno)?;
        let v = parse_id(tokens.next(), lineno)?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("unexpected token {extra:?} after edge"),
            });
        }
        pairs.push((u, v));
    }

    let ids: BTreeSet<u64> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    let ids = IdMap {
        original: ids.into_iter().collect(),
    };
    if ids.len() > Vertex::MAX as usize {
        return Err(Error::Resource(format!(
            "{} vertices exceed the id space",
            ids.len()
        )));
    }
    let edges = pairs.iter().map(|&(u, v)| {
        (
            ids.compact(u).expect("id collected above"),
            ids.compact(v).expect("id collected above"),
        )
    });
    let graph = Graph::from_edges(ids.len(), edges)?;
    Ok((graph, ids))
}

fn parse_id(token: Option<&str>, line: usize) -> Result<u64> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        msg: "expected two vertex ids".into(),
    })?;
    if token.starts_with('-') && token[1..].chars().all(|c| c.is_ascii_digit()) && token.len() > 1 {
        return Err(Error::Parse {
            line,
            msg: format!("negative vertex id {token}"),
        });
    }
    token.parse::<u64>().map_err(|_| Error::Parse {
        line,
        msg: format!("malformed vertex id {token:?}"),
    })
}

/// Writes `u v` per edge (original ids, `u < v`, lexicographic), preceded by
/// a `#` summary line.
pub fn write_edge_list<W: Write>(g: &Graph, ids: &IdMap, mut out: W) -> Result<()> {
    writeln!(out, "# vertices {} edges {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", ids.original(u), ids.original(v))?;
    }
    out.flush()?;
    Ok(())
}

/// Two columns per line: compact id, original id.
pub fn write_id_map<W: Write>(ids: &IdMap, mut out: W) -> Result<()> {
    for (compact, original) in ids.original.iter().enumerate() {
        writeln!(out, "{compact} {original}")?;
    }
    out.flush()?;
    Ok(())
}
