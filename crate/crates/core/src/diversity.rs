//! The distance-sum diversity measure and the closed-form bounds built on it.
//!
//! `ss(P)` sums the Hamming distance of every unordered pair of solutions in
//! `P`. Counting representation instead of pairs gives the identity
//! `ss(P) = Σ_v n_v (r - n_v)`, which every routine here works with.
//!
//! `g(a, b, c)` is the maximum `ss` of `c` subsets of size at most `b` drawn
//! from an `a`-element ground set. All arithmetic is exact and integral.

use crate::error::{Error, Result};
use crate::matroids::{closure_of, Matroid};
use crate::solution::{Solution, SolutionMultiset};

/// `Σ_v n_v (r - n_v)` over the representation counts of `p`.
pub fn pairwise_distance_sum(p: &SolutionMultiset) -> u64 {
    let r = p.len() as u64;
    p.counts()
        .iter()
        .map(|&n| {
            let n = n as u64;
            n * (r - n)
        })
        .sum()
}

/// Change in `ss` when an element with current count `b` is inserted into one
/// solution of a multiset of size `a`.
#[inline]
pub fn delta(a: i64, b: i64) -> i64 {
    a - 2 * b - 1
}

/// Arguments of [`g_bound`]: ground-set size, per-solution size cap, multiset size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GBoundInputs {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl GBoundInputs {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        GBoundInputs { a, b, c }
    }
}

/// Maximum `ss` of a `c`-multiset of subsets of size at most `b` of an
/// `a`-set.
///
/// With `h = min(b, a/2)` (possibly half-integral) the multiset carries
/// `H = ⌈c/2⌉⌈h⌉ + ⌊c/2⌋⌊h⌋` element slots spread as evenly as possible:
/// `H = q·a + m`, giving `a·q·(c−q) + m·(c−2q−1)`.
pub fn g_bound(input: GBoundInputs) -> u64 {
    let GBoundInputs { a, b, c } = input;
    if a == 0 || b == 0 || c <= 1 {
        return 0;
    }
    // 2h is integral even when h is not.
    let twice_h = (2 * b).min(a);
    let h_ceil = twice_h.div_ceil(2);
    let h_floor = twice_h / 2;
    let slots = c.div_ceil(2) * h_ceil + (c / 2) * h_floor;
    let q = slots / a;
    let m = slots % a;
    let (a, c, q, m) = (a as i64, c as i64, q as i64, m as i64);
    let value = a * q * (c - q) + m * (c - 2 * q - 1);
    debug_assert!(value >= 0);
    value as u64
}

/// Shorthand for `g_bound(GBoundInputs::new(a, b, c))`.
#[inline]
pub fn g(a: u64, b: u64, c: u64) -> u64 {
    g_bound(GBoundInputs::new(a, b, c))
}

/// Upper bound `g(|V|, r_M, r)` on `ss` of any `r` independent sets of `m`.
pub fn matroid_diversity_upper_bound<M: Matroid + ?Sized>(m: &M, r: usize) -> u64 {
    g(m.ground_size() as u64, m.rank() as u64, r as u64)
}

/// `Σ_i g(|V_i|, b_i, r)` for a partition into blocks `V_i` with caps `b_i`.
pub fn partition_diversity_upper_bound(
    block_sizes: &[usize],
    caps: &[usize],
    r: usize,
) -> Result<u64> {
    if block_sizes.len() != caps.len() {
        return Err(Error::invalid(format!(
            "{} block sizes but {} caps",
            block_sizes.len(),
            caps.len()
        )));
    }
    Ok(block_sizes
        .iter()
        .zip(caps)
        .map(|(&size, &cap)| g(size as u64, cap as u64, r as u64))
        .sum())
}

/// Closure-sharpened bound evaluated at a single independent `x`:
/// `g(|V|−|cl(x)|, r_M−⌊n_x⌋, r) + g(|cl(x)|, ⌈n_x⌉, r)` where
/// `n_x = min(r_M·|cl(x)|/|V|, |x|)`.
///
/// Every independent `x` yields a valid bound, so the minimum over any list
/// of candidates is one as well.
pub fn closure_sharpened_bound<M: Matroid + ?Sized>(m: &M, x: &Solution, r: usize) -> Result<u64> {
    let closure = closure_of(m, x)?;
    let n = m.ground_size() as u64;
    let rank = m.rank() as u64;
    let cl = closure.len() as u64;
    let size = x.len() as u64;
    let num = rank * cl;
    let (nx_floor, nx_ceil) = match num.checked_div(n) {
        None => (0, 0),
        Some(q) => (q.min(size), num.div_ceil(n).min(size)),
    };
    let r = r as u64;
    Ok(g(n - cl, rank - nx_floor, r) + g(cl, nx_ceil, r))
}

/// Whether `g(⌈k·a/b⌉, k, c) ≥ k·g(a, b, c)/b`, compared exactly.
pub fn g_ratio_check(a: u64, b: u64, c: u64, k: u64) -> bool {
    assert!(a >= 1 && b >= 1 && c >= 1, "ratio check needs a, b, c >= 1");
    let scaled = (k * a).div_ceil(b);
    (g(scaled, k, c) as u128) * (b as u128) >= (k as u128) * (g(a, b, c) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroids::{PartitionMatroid, UniformMatroid};
    use proptest::prelude::*;

    /// Independent oracle: exhaustive maximum of ss over c-multisets of
    /// subsets of size <= b of an a-set, via pairwise Hamming sums.
    fn max_ss_bruteforce(a: usize, b: usize, c: usize) -> u64 {
        let sets: Vec<u32> = (0u32..1 << a)
            .filter(|m| m.count_ones() as usize <= b)
            .collect();
        fn rec(sets: &[u32], start: usize, left: usize, chosen: &mut Vec<u32>, best: &mut u64) {
            if left == 0 {
                let mut total = 0u64;
                for i in 0..chosen.len() {
                    for j in i + 1..chosen.len() {
                        total += (chosen[i] ^ chosen[j]).count_ones() as u64;
                    }
                }
                *best = (*best).max(total);
                return;
            }
            for i in start..sets.len() {
                chosen.push(sets[i]);
                rec(sets, i, left - 1, chosen, best);
                chosen.pop();
            }
        }
        let mut best = 0;
        rec(&sets, 0, c, &mut Vec::new(), &mut best);
        best
    }

    fn multiset(n: usize, sets: &[&[usize]]) -> SolutionMultiset {
        let sols = sets
            .iter()
            .map(|s| Solution::from_elements(n, s.iter().copied()).unwrap())
            .collect();
        SolutionMultiset::new(n, sols).unwrap()
    }

    fn explicit_pairs(p: &SolutionMultiset) -> u64 {
        let s = p.solutions();
        let mut total = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                total += s[i].symmetric_difference_len(&s[j]) as u64;
            }
        }
        total
    }

    #[test]
    fn ss_examples() {
        // ids shifted to 0-based
        assert_eq!(multiset(4, &[&[0, 1], &[1, 2]]).ss(), 2);
        assert_eq!(multiset(4, &[&[0, 2], &[0, 2], &[0, 2]]).ss(), 0);
        assert_eq!(multiset(4, &[&[0, 1], &[0, 2], &[1, 2]]).ss(), 6);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(5, 2), 0);
        assert_eq!(delta(2, 0), 1);
        assert_eq!(delta(4, 3), -3);
    }

    #[test]
    fn g_examples() {
        assert_eq!(g(4, 2, 2), 4);
        assert_eq!(g(5, 0, 7), 0);
        assert_eq!(g(3, 1, 2), 2);
        assert_eq!(g(0, 3, 3), 0);
        assert_eq!(g(6, 3, 1), 0);
        for c in (2..=40).step_by(2) {
            assert_eq!(g(100, 50, c), 25 * c * c);
        }
    }

    #[test]
    fn g_matches_bruteforce_maximum() {
        for a in 1..=5 {
            for b in 0..=a {
                for c in 1..=3 {
                    assert_eq!(
                        g(a as u64, b as u64, c as u64),
                        max_ss_bruteforce(a, b, c),
                        "g({a},{b},{c})"
                    );
                }
            }
        }
        // larger c on tiny ground sets
        for a in 1..=3 {
            for b in 0..=a {
                for c in 4..=5 {
                    assert_eq!(g(a as u64, b as u64, c as u64), max_ss_bruteforce(a, b, c));
                }
            }
        }
    }

    #[test]
    fn g_monotone_grid() {
        for a in 0..=30u64 {
            for b in 0..=30u64 {
                for c in 1..=12u64 {
                    let v = g(a, b, c);
                    assert!(g(a + 1, b, c) >= v, "a: ({a},{b},{c})");
                    assert!(g(a, b + 1, c) >= v, "b: ({a},{b},{c})");
                    assert!(g(a, b, c + 1) >= v, "c: ({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn ratio_examples() {
        assert!(g_ratio_check(4, 2, 2, 1));
        assert!(g_ratio_check(10, 5, 4, 2));
        for (a, b, c) in [(7, 3, 5), (12, 4, 3), (9, 9, 2)] {
            assert!(g_ratio_check(a, b, c, b));
        }
    }

    #[test]
    fn partition_bound_examples() {
        assert_eq!(partition_diversity_upper_bound(&[2, 2], &[1, 1], 2).unwrap(), 4);
        assert_eq!(partition_diversity_upper_bound(&[5, 3, 9], &[2, 1, 4], 1).unwrap(), 0);
        assert_eq!(partition_diversity_upper_bound(&[3], &[1], 2).unwrap(), 2);
        assert!(partition_diversity_upper_bound(&[3, 1], &[1], 2).is_err());
    }

    #[test]
    fn matroid_bound_examples() {
        let u = UniformMatroid::new(4, 2);
        assert_eq!(matroid_diversity_upper_bound(&u, 2), 4);
        assert_eq!(matroid_diversity_upper_bound(&u, 1), 0);
        let p = PartitionMatroid::from_blocks(4, &[vec![0, 1], vec![2, 3]], &[1, 1]).unwrap();
        assert_eq!(matroid_diversity_upper_bound(&p, 2), 4);
    }

    #[test]
    fn closure_bound_examples() {
        let u = UniformMatroid::new(5, 3);
        let empty = Solution::empty(5);
        assert_eq!(closure_sharpened_bound(&u, &empty, 3).unwrap(), g(5, 3, 3));

        let p = PartitionMatroid::from_blocks(4, &[vec![0, 1], vec![2, 3]], &[1, 1]).unwrap();
        let x = Solution::from_elements(4, [0]).unwrap();
        assert_eq!(closure_sharpened_bound(&p, &x, 2).unwrap(), 4);

        let full = UniformMatroid::new(4, 4);
        let base = Solution::full(4);
        assert_eq!(closure_sharpened_bound(&full, &base, 3).unwrap(), g(4, 4, 3));

        let dependent = Solution::from_elements(4, [0, 1]).unwrap();
        assert!(closure_sharpened_bound(&p, &dependent, 2).is_err());
    }

    proptest! {
        #[test]
        fn ss_equals_pairwise_hamming(
            n in 1usize..=10,
            masks in proptest::collection::vec(any::<u16>(), 1..=6),
        ) {
            let sols = masks.iter().map(|&m| Solution::from_mask(n, m as u64)).collect();
            let p = SolutionMultiset::new(n, sols).unwrap();
            prop_assert_eq!(p.ss(), explicit_pairs(&p));
        }

        #[test]
        fn ss_decomposes_over_partitions(
            n in 1usize..=10,
            masks in proptest::collection::vec(any::<u16>(), 1..=6),
            labels in proptest::collection::vec(0usize..3, 10),
        ) {
            let sols = masks.iter().map(|&m| Solution::from_mask(n, m as u64)).collect();
            let p = SolutionMultiset::new(n, sols).unwrap();
            let total: u64 = (0..3)
                .map(|part| {
                    let block = Solution::from_elements(n, (0..n).filter(|&v| labels[v] == part)).unwrap();
                    p.restrict(&block).ss()
                })
                .sum();
            prop_assert_eq!(p.ss(), total);
        }

        #[test]
        fn insertion_changes_ss_by_delta(
            n in 1usize..=10,
            masks in proptest::collection::vec(any::<u16>(), 1..=6),
            which in any::<prop::sample::Index>(),
            elem in any::<prop::sample::Index>(),
        ) {
            let sols: Vec<Solution> = masks.iter().map(|&m| Solution::from_mask(n, m as u64)).collect();
            let mut p = SolutionMultiset::new(n, sols).unwrap();
            let i = which.index(p.len());
            let v = elem.index(n);
            prop_assume!(!p.solutions()[i].contains(v));
            let before = p.ss() as i64;
            let expected = delta(p.len() as i64, p.count(v) as i64);
            p.insert(i, v).unwrap();
            prop_assert_eq!(p.ss() as i64 - before, expected);
        }

        #[test]
        fn g_superadditive(
            parts in proptest::collection::vec((0u64..15, 0u64..10), 1..=5),
            c in 1u64..=12,
        ) {
            let a: u64 = parts.iter().map(|p| p.0).sum();
            let b: u64 = parts.iter().map(|p| p.1).sum();
            let split: u64 = parts.iter().map(|&(ai, bi)| g(ai, bi, c)).sum();
            prop_assert!(g(a, b, c) >= split);
        }

        #[test]
        fn ratio_holds(a in 1u64..=30, b in 1u64..=30, c in 1u64..=12, k in 0u64..=30) {
            prop_assert!(g_ratio_check(a, b, c, k));
        }
    }
}
