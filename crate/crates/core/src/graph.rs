//! Undirected simple graphs over vertices `0..n`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a simple graph, dropping self-loops and duplicate edges.
    /// Returns the graph and the number of dropped duplicates.
    pub fn from_edges_counting<I>(n: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) outside {n} vertices")));
            }
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut listed = 0usize;
        let mut kept = 0usize;
        for list in &mut adj {
            listed += list.len();
            list.sort_unstable();
            list.dedup();
            kept += list.len();
        }
        let duplicates = (listed - kept) / 2;
        Ok((
            Graph {
                adj,
                edges: kept / 2,
            },
            duplicates,
        ))
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges_counting(n, edges).map(|(g, _)| g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Complement graph without self-loops.
    pub fn complement(&self) -> Graph {
        let n = self.adj.len();
        let mut adj = vec![Vec::new(); n];
        let mut edges = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            let mut present = self.adj[u].iter().peekable();
            for v in 0..n {
                if present.peek() == Some(&&v) {
                    present.next();
                    continue;
                }
                if v != u {
                    list.push(v);
                    if v > u {
                        edges += 1;
                    }
                }
            }
        }
        Graph { adj, edges }
    }
}
