//! Random instance generators and reference formulas shared by the
//! integration tests. Reference values here are computed independently of
//! the library's closed forms.

#![allow(dead_code)]

use diverse_core::bruteforce::random_binary_matroid;
use diverse_core::{ExplicitMatroid, Graph, Matroid, ModularObjective, PartitionMatroid, Solution, UniformMatroid};
use rand::Rng;

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_modular<R: Rng>(rng: &mut R, n: usize) -> ModularObjective {
    ModularObjective::new((0..n).map(|_| rng.random_range(0..20)).collect()).unwrap()
}

/// Random loop-free partition matroid.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> PartitionMatroid {
    let k = rng.random_range(1..=n.clamp(1, 4));
    let mut block_of: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    // Every block gets at least one element.
    for (b, slot) in block_of.iter_mut().take(k).enumerate() {
        *slot = b;
    }
    let caps = (0..k)
        .map(|b| {
            let size = block_of.iter().filter(|&&x| x == b).count();
            rng.random_range(1..=size)
        })
        .collect();
    PartitionMatroid::from_assignment(block_of, caps).unwrap()
}

pub fn random_binary<R: Rng>(rng: &mut R, n: usize) -> ExplicitMatroid {
    let dim = rng.random_range(1..=n.min(5));
    let trunc = if rng.random_bool(0.3) {
        Some(rng.random_range(1..=dim))
    } else {
        None
    };
    random_binary_matroid(n, dim, trunc, rng).unwrap()
}

/// A random loop-free matroid of one of three families.
pub fn random_matroid<R: Rng>(rng: &mut R, n: usize) -> Box<dyn Matroid> {
    match rng.random_range(0..3) {
        0 => Box::new(UniformMatroid::new(n, rng.random_range(1..=n))),
        1 => Box::new(random_partition(rng, n)),
        _ => Box::new(random_binary(rng, n)),
    }
}

/// Largest `Σ n_v (c − n_v)` over count vectors on `a` elements that `c`
/// sets of at most `b` elements can realize: any total `T ≤ c·min(a, b)`
/// spread as evenly as possible, maximized over `T`.
pub fn max_ss_reference(a: u64, b: u64, c: u64) -> u64 {
    if a == 0 {
        return 0;
    }
    (0..=c * a.min(b))
        .map(|t| {
            let (q, m) = (t / a, t % a);
            let high = if m > 0 { m * (q + 1) * (c - q - 1) } else { 0 };
            (a - m) * q * (c - q) + high
        })
        .max()
        .unwrap_or(0)
}

/// Diversity of a count vector.
pub fn ss_of_counts(counts: &[u32], r: u32) -> u64 {
    counts.iter().map(|&n| (n as u64) * (r - n) as u64).sum()
}

/// Diversity as the sum of pairwise symmetric differences.
pub fn ss_pairwise(sols: &[Solution]) -> u64 {
    let mut total = 0;
    for i in 0..sols.len() {
        for j in i + 1..sols.len() {
            total += sols[i].symmetric_difference_len(&sols[j]) as u64;
        }
    }
    total
}

/// Largest independent subset size by enumeration.
pub fn brute_rank_of(m: &dyn Matroid, x: &Solution) -> usize {
    let n = m.ground_size();
    let elems: Vec<usize> = x.iter().collect();
    (0u32..1 << elems.len())
        .filter(|&sub| {
            let s = Solution::from_elements(n, (0..elems.len()).filter(|i| sub >> i & 1 == 1).map(|i| elems[i]))
                .unwrap();
            m.is_independent(&s)
        })
        .map(|sub| sub.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Closure by its definition through brute-force rank.
pub fn brute_closure(m: &dyn Matroid, x: &Solution) -> Solution {
    let n = m.ground_size();
    let base = brute_rank_of(m, x);
    Solution::from_elements(n, (0..n).filter(|&v| brute_rank_of(m, &x.with(v)) == base)).unwrap()
}
