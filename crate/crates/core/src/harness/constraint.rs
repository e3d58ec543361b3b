//! Constraint construction for experiments.

use std::path::PathBuf;

use crate::diversity::{g, partition_diversity_upper_bound};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matroids::{IndependenceOracle, Matroid, PartitionMatroid, UniformMatroid};
use crate::solution::{ElementId, Solution};

/// Partition of the vertices sorted by ascending degree (ties by ascending
/// id) into `k` consecutive blocks. Blocks `2..=k` hold `⌊n/k⌋` vertices and
/// block 1, the lowest degrees, absorbs the remainder. `reverse` sorts by
/// descending degree instead.
pub fn degree_partition(graph: &Graph, k: usize, caps: &[usize], reverse: bool) -> Result<PartitionMatroid> {
    let n = graph.vertex_count();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("cannot split {n} vertices into {k} blocks")));
    }
    if caps.len() != k {
        return Err(Error::invalid(format!("{} caps given for {k} blocks", caps.len())));
    }
    let mut order: Vec<ElementId> = (0..n).collect();
    if reverse {
        order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    } else {
        order.sort_by_key(|&v| (graph.degree(v), v));
    }
    let rest = n / k;
    let first = n - rest * (k - 1);
    let mut blocks = Vec::with_capacity(k);
    blocks.push(order[..first].to_vec());
    for chunk in order[first..].chunks(rest) {
        blocks.push(chunk.to_vec());
    }
    PartitionMatroid::from_blocks(n, &blocks, caps)
}

/// How to build a constraint for a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintSpec {
    Uniform { k: usize },
    PartitionFile { path: PathBuf },
    DegreePartition {
        k: usize,
        caps: Vec<usize>,
        reverse: bool,
    },
    /// Intersection of matroid specs; members may not be intersections.
    Intersection(Vec<ConstraintSpec>),
}

impl ConstraintSpec {
    pub fn build(&self, graph: &Graph) -> Result<Constraint> {
        let n = graph.vertex_count();
        Ok(match self {
            ConstraintSpec::Uniform { k } => Constraint::Uniform(UniformMatroid::new(n, *k)),
            ConstraintSpec::PartitionFile { path } => {
                let text = std::fs::read_to_string(path)?;
                Constraint::Partition(PartitionMatroid::parse(&text, n)?)
            }
            ConstraintSpec::DegreePartition { k, caps, reverse } => {
                Constraint::Partition(degree_partition(graph, *k, caps, *reverse)?)
            }
            ConstraintSpec::Intersection(members) => {
                if members.is_empty() {
                    return Err(Error::invalid("an intersection needs at least one member"));
                }
                let built = members
                    .iter()
                    .map(|m| match m {
                        ConstraintSpec::Intersection(_) => {
                            Err(Error::invalid("nested intersections are not supported"))
                        }
                        other => other.build(graph),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Constraint::Intersection(built)
            }
        })
    }
}

/// A built constraint.
#[derive(Clone, Debug)]
pub enum Constraint {
    Uniform(UniformMatroid),
    Partition(PartitionMatroid),
    Intersection(Vec<Constraint>),
}

impl Constraint {
    /// The matroid, unless this is an intersection.
    pub fn as_matroid(&self) -> Option<&dyn Matroid> {
        match self {
            Constraint::Uniform(m) => Some(m),
            Constraint::Partition(m) => Some(m),
            Constraint::Intersection(_) => None,
        }
    }

    /// Upper bound on the diversity of `r` feasible solutions: `g(|V|, K, r)`
    /// for uniform, the per-block sum for partitions, the smallest member
    /// bound for intersections.
    pub fn ss_bound(&self, r: usize) -> u64 {
        match self {
            Constraint::Uniform(m) => g(m.ground_size() as u64, m.rank() as u64, r as u64),
            Constraint::Partition(m) => {
                partition_diversity_upper_bound(&m.block_sizes(), m.caps(), r)
                    .expect("blocks and caps agree")
            }
            Constraint::Intersection(members) => {
                members.iter().map(|c| c.ss_bound(r)).min().unwrap_or(0)
            }
        }
    }

    /// Short label: `U{rank}` or `P{rank}`, members joined by `+`.
    pub fn label(&self) -> String {
        match self {
            Constraint::Uniform(m) => format!("U{}", m.rank()),
            Constraint::Partition(m) => format!("P{}", m.rank()),
            Constraint::Intersection(members) => members
                .iter()
                .map(Constraint::label)
                .collect::<Vec<_>>()
                .join("+"),
        }
    }
}

impl IndependenceOracle for Constraint {
    fn ground_size(&self) -> usize {
        match self {
            Constraint::Uniform(m) => m.ground_size(),
            Constraint::Partition(m) => m.ground_size(),
            Constraint::Intersection(members) => members[0].ground_size(),
        }
    }

    fn is_independent(&self, x: &Solution) -> bool {
        match self {
            Constraint::Uniform(m) => m.is_independent(x),
            Constraint::Partition(m) => m.is_independent(x),
            Constraint::Intersection(members) => members.iter().all(|c| c.is_independent(x)),
        }
    }

    fn can_add(&self, x: &Solution, v: ElementId) -> bool {
        match self {
            Constraint::Uniform(m) => m.can_add(x, v),
            Constraint::Partition(m) => m.can_add(x, v),
            Constraint::Intersection(members) => members.iter().all(|c| c.can_add(x, v)),
        }
    }
}
