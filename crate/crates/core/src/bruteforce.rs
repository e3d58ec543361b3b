//! Exhaustive solvers and fixture generators for small instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::diversity::closure_sharpened_bound;
use crate::error::{Error, Result};
use crate::matroids::{ExplicitMatroid, IndependenceOracle, PartitionMatroid};
use crate::objectives::{ModularObjective, Value, ValueOracle};
use crate::solution::{Solution, SolutionMultiset};

/// Size limits for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_ground: usize,
    pub max_r: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_ground: 12,
            max_r: 3,
        }
    }
}

/// Ground-set cap for the diverse optimum, whatever the limits say.
pub const DIVERSE_MAX_GROUND: usize = 8;

fn refuse(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::TooLarge { what, size, limit });
    }
    Ok(())
}

/// Feasible subsets as bitmasks, in increasing mask order.
fn feasible_masks<C: IndependenceOracle + ?Sized>(c: &C) -> Vec<u32> {
    let n = c.ground_size();
    (0..1u32 << n)
        .filter(|&m| c.is_independent(&Solution::from_mask(n, m as u64)))
        .collect()
}

/// Largest value over feasible sets. Among equal values the smallest mask
/// wins.
pub fn exact_optimum<F, C>(f: &F, c: &C, limits: OracleLimits) -> Result<(Value, Solution)>
where
    F: ValueOracle,
    C: IndependenceOracle + ?Sized,
{
    let n = f.ground_size();
    refuse("ground set", n, limits.max_ground)?;
    let mut best = (f.value(&Solution::empty(n)), Solution::empty(n));
    for m in feasible_masks(c) {
        let x = Solution::from_mask(n, m as u64);
        let v = f.value(&x);
        if v > best.0 {
            best = (v, x);
        }
    }
    Ok(best)
}

/// `out[k]` is the largest value of a feasible set with at most `k`
/// elements, for `k` in `0..=n`.
pub fn exact_optimum_by_size<F, C>(f: &F, c: &C, limits: OracleLimits) -> Result<Vec<Value>>
where
    F: ValueOracle,
    C: IndependenceOracle + ?Sized,
{
    let n = f.ground_size();
    refuse("ground set", n, limits.max_ground)?;
    let mut best = vec![f.value(&Solution::empty(n)); n + 1];
    for m in feasible_masks(c) {
        let x = Solution::from_mask(n, m as u64);
        let k = x.len();
        best[k] = best[k].max(f.value(&x));
    }
    for k in 1..=n {
        best[k] = best[k].max(best[k - 1]);
    }
    Ok(best)
}

fn is_approximation(value: Value, alpha: &BigRational, opt: Value) -> bool {
    BigRational::from_integer(BigInt::from(value)) >= alpha * BigInt::from(opt)
}

/// Largest diversity over `r`-multisets of feasible `α`-approximations.
/// Multisets are enumerated as sorted tuples; the lexicographically first
/// maximizer is returned.
pub fn exact_diverse_optimum<F, C>(
    f: &F,
    c: &C,
    r: usize,
    alpha: &BigRational,
    limits: OracleLimits,
) -> Result<(u64, SolutionMultiset)>
where
    F: ValueOracle,
    C: IndependenceOracle + ?Sized,
{
    let n = f.ground_size();
    refuse("ground set", n, limits.max_ground.min(DIVERSE_MAX_GROUND))?;
    refuse("multiset size", r, limits.max_r)?;
    if r == 0 {
        return Err(Error::invalid("multiset size must be positive"));
    }
    let (opt, _) = exact_optimum(f, c, limits)?;
    let cands: Vec<u32> = feasible_masks(c)
        .into_iter()
        .filter(|&m| is_approximation(f.value(&Solution::from_mask(n, m as u64)), alpha, opt))
        .collect();
    if cands.is_empty() {
        return Err(Error::invalid("no feasible set meets the approximation ratio"));
    }
    let mut idx = vec![0usize; r];
    let mut best: Option<(u64, Vec<usize>)> = None;
    loop {
        let mut ss = 0u64;
        for i in 0..r {
            for j in i + 1..r {
                ss += (cands[idx[i]] ^ cands[idx[j]]).count_ones() as u64;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| ss > *b) {
            best = Some((ss, idx.clone()));
        }
        // Next nondecreasing tuple.
        let mut pos = r;
        while pos > 0 && idx[pos - 1] == cands.len() - 1 {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        idx[pos - 1] += 1;
        let v = idx[pos - 1];
        for slot in idx.iter_mut().skip(pos) {
            *slot = v;
        }
    }
    let (ss, idx) = best.expect("at least one tuple");
    let sols = idx
        .iter()
        .map(|&i| Solution::from_mask(n, cands[i] as u64))
        .collect();
    Ok((ss, SolutionMultiset::new(n, sols)?))
}

/// Largest number of pairwise disjoint nonempty feasible
/// `α`-approximations.
pub fn disjoint_approx_count<F, C>(f: &F, c: &C, alpha: &BigRational, limits: OracleLimits) -> Result<usize>
where
    F: ValueOracle,
    C: IndependenceOracle + ?Sized,
{
    let n = f.ground_size();
    refuse("ground set", n, limits.max_ground)?;
    let (opt, _) = exact_optimum(f, c, limits)?;
    let cands: Vec<u32> = feasible_masks(c)
        .into_iter()
        .filter(|&m| m != 0)
        .filter(|&m| is_approximation(f.value(&Solution::from_mask(n, m as u64)), alpha, opt))
        .collect();
    // Any packing can shrink each member to an inclusion-minimal candidate.
    let minimal: Vec<u32> = cands
        .iter()
        .copied()
        .filter(|&m| !cands.iter().any(|&o| o != m && o & m == o))
        .collect();
    let mut by_low = vec![Vec::new(); n];
    for m in minimal {
        by_low[m.trailing_zeros() as usize].push(m);
    }
    let mut best = 0;
    pack(&by_low, (1u32 << n) - 1, 0, &mut best);
    Ok(best)
}

fn pack(by_low: &[Vec<u32>], avail: u32, count: usize, best: &mut usize) {
    *best = (*best).max(count);
    if avail == 0 || count + avail.count_ones() as usize <= *best {
        return;
    }
    let e = avail.trailing_zeros() as usize;
    for &m in &by_low[e] {
        if m & avail == m {
            pack(by_low, avail & !m, count + 1, best);
        }
    }
    pack(by_low, avail & !(1 << e), count, best);
}

/// Minimum of the closure-sharpened diversity bound over every independent
/// set of an explicit matroid.
pub fn min_closure_bound(m: &ExplicitMatroid, r: usize) -> Result<u64> {
    let n = m.ground_size();
    let mut best = u64::MAX;
    for mask in m.independent_masks() {
        let x = Solution::from_mask(n, mask as u64);
        best = best.min(closure_sharpened_bound(m, &x, r)?);
    }
    Ok(best)
}

/// Size of the smallest dependent set, `None` if every set is independent.
pub fn smallest_dependent_size<C: IndependenceOracle + ?Sized>(c: &C, limits: OracleLimits) -> Result<Option<usize>> {
    let n = c.ground_size();
    refuse("ground set", n, limits.max_ground)?;
    Ok((0..1u32 << n)
        .filter(|&m| !c.is_independent(&Solution::from_mask(n, m as u64)))
        .map(|m| m.count_ones() as usize)
        .min())
}

/// Size of the largest feasible set.
pub fn max_feasible_size<C: IndependenceOracle + ?Sized>(c: &C, limits: OracleLimits) -> Result<usize> {
    let n = c.ground_size();
    refuse("ground set", n, limits.max_ground)?;
    Ok(feasible_masks(c)
        .into_iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// `r` cyclic windows over `0..n`: the first `⌈r/2⌉` of size `⌈h⌉`, the rest
/// of size `⌊h⌋`, with `h = min(s, n/2)` and each window starting where the
/// previous one ended. Reaches diversity `g(n, s, r)`; for `s ≤ n/2` every
/// window has size `s`.
pub fn fixture_cyclic_uniform(n: usize, s: usize, r: usize) -> Result<SolutionMultiset> {
    if n == 0 || s == 0 || s > n {
        return Err(Error::invalid(format!("need 1 <= s <= n, got s = {s}, n = {n}")));
    }
    let twice_h = (2 * s).min(n);
    let (hi, lo) = (twice_h.div_ceil(2), twice_h / 2);
    let mut offset = 0;
    let mut sols = Vec::with_capacity(r);
    for i in 0..r {
        let size = if i < r.div_ceil(2) { hi } else { lo };
        sols.push(Solution::from_elements(n, (0..size).map(|j| (offset + j) % n))?);
        offset = (offset + size) % n;
    }
    SolutionMultiset::new(n, sols)
}

/// Weights `n, n−1, …, 1`.
pub fn fixture_modular_decreasing(n: usize) -> Result<ModularObjective> {
    if n == 0 {
        return Err(Error::invalid("ground set must be nonempty"));
    }
    ModularObjective::new((1..=n as Value).rev().collect())
}

/// Rank-`s` matroid on `0..n` where element 0 and the elements `s..n` share
/// one block of capacity 1 and each of `1..s` is free.
pub fn fixture_seed_blocking_matroid(n: usize, s: usize) -> Result<PartitionMatroid> {
    if s == 0 || s > n {
        return Err(Error::invalid(format!("need 1 <= s <= n, got s = {s}, n = {n}")));
    }
    let mut blocks = vec![std::iter::once(0).chain(s..n).collect::<Vec<_>>()];
    blocks.extend((1..s).map(|v| vec![v]));
    PartitionMatroid::from_blocks(n, &blocks, &vec![1; blocks.len()])
}

fn gf2_independent(vectors: &[u32], mask: u32) -> bool {
    let mut basis: Vec<u32> = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut v = vectors[i];
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v == 0 {
            return false;
        }
        basis.push(v);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    true
}

/// Random loop-free binary matroid: the column matroid of `n` random nonzero
/// vectors in `GF(2)^dim`, optionally truncated to rank `truncate`.
pub fn random_binary_matroid<R: Rng + ?Sized>(
    n: usize,
    dim: usize,
    truncate: Option<usize>,
    rng: &mut R,
) -> Result<ExplicitMatroid> {
    if dim == 0 || dim > 31 {
        return Err(Error::invalid(format!("dimension must be in [1, 31], got {dim}")));
    }
    let vectors: Vec<u32> = (0..n).map(|_| rng.random_range(1..1u32 << dim)).collect();
    let cap = truncate.unwrap_or(usize::MAX);
    ExplicitMatroid::from_predicate(n, |m| {
        m.count_ones() as usize <= cap && gf2_independent(&vectors, m)
    })
}

/// The rank of an explicit matroid by enumeration.
pub fn brute_rank(m: &ExplicitMatroid) -> usize {
    m.independent_masks()
        .map(|x| x.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diversity::g;
    use crate::graph::Graph;
    use crate::matroids::{axioms_check, Matroid, UniformMatroid};
    use crate::objectives::VertexCoverage;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sol(n: usize, ids: &[usize]) -> Solution {
        Solution::from_elements(n, ids.iter().copied()).unwrap()
    }

    fn zero() -> BigRational {
        BigRational::from_integer(0.into())
    }

    fn one() -> BigRational {
        BigRational::from_integer(1.into())
    }

    #[test]
    fn optimum_examples() {
        let lim = OracleLimits::default();
        let f = ModularObjective::new(vec![4, 3, 2, 1]).unwrap();
        let (v, x) = exact_optimum(&f, &UniformMatroid::new(4, 2), lim).unwrap();
        assert_eq!((v, x), (7, sol(4, &[0, 1])));
        let (v, x) = exact_optimum(&f, &UniformMatroid::new(4, 0), lim).unwrap();
        assert_eq!((v, x), (0, Solution::empty(4)));
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let cov = VertexCoverage::new(&path);
        let (v, x) = exact_optimum(&cov, &UniformMatroid::new(3, 1), lim).unwrap();
        assert_eq!((v, x), (3, sol(3, &[1])));
        let by_size = exact_optimum_by_size(&f, &UniformMatroid::new(4, 4), lim).unwrap();
        assert_eq!(by_size, vec![0, 4, 7, 9, 10]);
    }

    #[test]
    fn refuses_large_inputs() {
        let f = ModularObjective::new(vec![1; 13]).unwrap();
        let m = UniformMatroid::new(13, 2);
        assert!(matches!(exact_optimum(&f, &m, OracleLimits::default()), Err(Error::TooLarge { .. })));
        let f = ModularObjective::new(vec![1; 9]).unwrap();
        let m = UniformMatroid::new(9, 2);
        assert!(exact_diverse_optimum(&f, &m, 2, &zero(), OracleLimits::default()).is_err());
        let f = ModularObjective::new(vec![1; 4]).unwrap();
        let m = UniformMatroid::new(4, 2);
        assert!(exact_diverse_optimum(&f, &m, 4, &zero(), OracleLimits::default()).is_err());
    }

    #[test]
    fn diverse_optimum_examples() {
        let lim = OracleLimits::default();
        let f = ModularObjective::new(vec![4, 3, 2, 1]).unwrap();
        let m = UniformMatroid::new(4, 2);
        let (ss, p) = exact_diverse_optimum(&f, &m, 2, &zero(), lim).unwrap();
        assert_eq!(ss, 4);
        assert_eq!(p.ss(), 4);
        assert_eq!(exact_diverse_optimum(&f, &m, 1, &zero(), lim).unwrap().0, 0);
        assert_eq!(exact_diverse_optimum(&f, &m, 3, &one(), lim).unwrap().0, 0);
    }

    #[test]
    fn disjoint_count_examples() {
        let lim = OracleLimits::default();
        let f = ModularObjective::new(vec![2; 5]).unwrap();
        assert_eq!(disjoint_approx_count(&f, &UniformMatroid::new(5, 1), &one(), lim).unwrap(), 5);
        let f = ModularObjective::new(vec![1; 4]).unwrap();
        assert_eq!(disjoint_approx_count(&f, &UniformMatroid::new(4, 4), &one(), lim).unwrap(), 1);
        // In a triangle every vertex covers everything; with paths only the
        // two centers are optimal.
        let triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let cov = VertexCoverage::new(&triangles);
        assert_eq!(disjoint_approx_count(&cov, &UniformMatroid::new(6, 1), &one(), lim).unwrap(), 6);
        let paths = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let cov = VertexCoverage::new(&paths);
        assert_eq!(disjoint_approx_count(&cov, &UniformMatroid::new(6, 1), &one(), lim).unwrap(), 2);
    }

    #[test]
    fn cyclic_fixture_reaches_g() {
        let p = fixture_cyclic_uniform(4, 2, 2).unwrap();
        assert_eq!(p.solutions(), &[sol(4, &[0, 1]), sol(4, &[2, 3])]);
        assert_eq!(p.ss(), 4);
        for n in 1..=9 {
            for s in 1..=n {
                for r in 1..=6 {
                    let p = fixture_cyclic_uniform(n, s, r).unwrap();
                    assert!(p.solutions().iter().all(|x| x.len() <= s));
                    assert_eq!(p.ss(), g(n as u64, s as u64, r as u64), "n={n} s={s} r={r}");
                }
            }
        }
        assert!(fixture_cyclic_uniform(3, 4, 2).is_err());
    }

    #[test]
    fn modular_fixture_weights() {
        assert_eq!(fixture_modular_decreasing(4).unwrap().weights(), &[4, 3, 2, 1]);
        assert!(fixture_modular_decreasing(0).is_err());
    }

    #[test]
    fn seed_blocking_matroid_has_rank_s() {
        for n in 1..=7 {
            for s in 1..=n {
                let m = fixture_seed_blocking_matroid(n, s).unwrap();
                assert_eq!(m.rank(), s);
            }
        }
    }

    #[test]
    fn random_binary_matroids_satisfy_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..20 {
            let n = 3 + i % 5;
            let trunc = if i % 3 == 0 { Some(2) } else { None };
            let m = random_binary_matroid(n, 1 + i % 4, trunc, &mut rng).unwrap();
            assert!(axioms_check(&m).unwrap().holds());
            assert!(!crate::matroids::has_loops(&m));
            assert_eq!(m.rank(), brute_rank(&m));
        }
    }

    #[test]
    fn helper_sizes() {
        let lim = OracleLimits::default();
        let m = UniformMatroid::new(5, 2);
        assert_eq!(smallest_dependent_size(&m, lim).unwrap(), Some(3));
        assert_eq!(max_feasible_size(&m, lim).unwrap(), 2);
        assert_eq!(smallest_dependent_size(&UniformMatroid::new(3, 3), lim).unwrap(), None);
    }
}
