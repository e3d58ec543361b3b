//! Graph file readers.
//!
//! Edge lists hold one `u v` pair per line with 1-based ids; lines starting
//! with `%`, `#` or `c` are comments. DIMACS-style `p edge N M` headers fix
//! the vertex count and `e u v` lines are accepted, so BHOSLIB `.clq` files
//! load directly. Without a header the vertex count is the largest id seen.

use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    MatrixMarket,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "edges" => Ok(GraphFormat::EdgeList),
            "matrix-market" | "mtx" => Ok(GraphFormat::MatrixMarket),
            other => Err(Error::invalid(format!(
                "unknown graph format {other:?}, expected edge-list or matrix-market"
            ))),
        }
    }
}

impl GraphFormat {
    /// Guesses the format from a file extension, defaulting to edge lists.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtx") => GraphFormat::MatrixMarket,
            _ => GraphFormat::EdgeList,
        }
    }
}

/// A parsed graph and the number of duplicate edges that were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub duplicates: usize,
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    let id: usize = tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a vertex id, found {tok:?}"),
    })?;
    if id == 0 {
        return Err(Error::Parse {
            line,
            msg: "vertex ids are 1-based".into(),
        });
    }
    Ok(id - 1)
}

fn build(n: usize, edges: Vec<(usize, usize)>, lines: &[usize]) -> Result<LoadedGraph> {
    for (&(u, v), &line) in edges.iter().zip(lines) {
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("edge ({}, {}) exceeds the {n} declared vertices", u + 1, v + 1),
            });
        }
    }
    let (graph, duplicates) = Graph::from_edges_counting(n, edges)?;
    Ok(LoadedGraph { graph, duplicates })
}

pub fn parse_edge_list(text: &str) -> Result<LoadedGraph> {
    let mut declared = None;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(first) = toks.next() else { continue };
        if first.starts_with('%') || first.starts_with('#') || first == "c" {
            continue;
        }
        let (a, b) = match first {
            "p" => {
                let _kind = toks.next();
                let n = toks.next().ok_or_else(|| Error::Parse {
                    line,
                    msg: "header lacks a vertex count".into(),
                })?;
                declared = Some(n.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad vertex count {n:?}"),
                })?);
                continue;
            }
            "e" => (toks.next(), toks.next()),
            _ => (Some(first), toks.next()),
        };
        let (Some(a), Some(b)) = (a, b) else {
            return Err(Error::Parse {
                line,
                msg: "expected two vertex ids".into(),
            });
        };
        edges.push((parse_id(a, line)?, parse_id(b, line)?));
        lines.push(line);
    }
    let seen = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    build(declared.unwrap_or(seen), edges, &lines)
}

/// Coordinate MatrixMarket files; entry values, if any, are ignored and the
/// matrix is read as an undirected pattern.
pub fn parse_matrix_market(text: &str) -> Result<LoadedGraph> {
    let mut size = None;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if i == 0 {
            let header = trimmed.to_ascii_lowercase();
            if !header.starts_with("%%matrixmarket") || !header.contains("coordinate") {
                return Err(Error::Parse {
                    line,
                    msg: "expected a %%MatrixMarket coordinate header".into(),
                });
            }
            continue;
        }
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if size.is_none() {
            if toks.len() < 3 {
                return Err(Error::Parse {
                    line,
                    msg: "size line needs rows, columns and entries".into(),
                });
            }
            let dims: Vec<usize> = toks[..2]
                .iter()
                .map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("bad dimension {t:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            size = Some(dims[0].max(dims[1]));
            continue;
        }
        if toks.len() < 2 {
            return Err(Error::Parse {
                line,
                msg: "expected two vertex ids".into(),
            });
        }
        edges.push((parse_id(toks[0], line)?, parse_id(toks[1], line)?));
        lines.push(line);
    }
    let n = size.ok_or(Error::Parse {
        line: 0,
        msg: "missing size line".into(),
    })?;
    build(n, edges, &lines)
}

/// Reads a graph file, optionally replacing it by its complement.
pub fn load_graph(path: &Path, format: GraphFormat, complement: bool) -> Result<LoadedGraph> {
    let text = std::fs::read_to_string(path)?;
    let mut loaded = match format {
        GraphFormat::EdgeList => parse_edge_list(&text)?,
        GraphFormat::MatrixMarket => parse_matrix_market(&text)?,
    };
    if loaded.duplicates > 0 {
        log::warn!(
            "{}: dropped {} duplicate edges",
            path.display(),
            loaded.duplicates
        );
    }
    if complement {
        loaded.graph = loaded.graph.complement();
    }
    Ok(loaded)
}
