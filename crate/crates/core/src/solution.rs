//! Ground-set subsets and indexed multisets of them.

use std::fmt;

use crate::error::{Error, Result};

/// Dense index of a ground-set element, in `0..ground_size`.
pub type ElementId = usize;

const WORD: usize = 64;

/// A subset of the ground set `0..universe`, stored as a dense bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    words: Vec<u64>,
    universe: usize,
    len: usize,
}

impl Solution {
    pub fn empty(universe: usize) -> Self {
        Solution {
            words: vec![0; universe.div_ceil(WORD)],
            universe,
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Solution::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a solution from element ids; out-of-range ids are rejected.
    pub fn from_elements<I>(universe: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = ElementId>,
    {
        let mut s = Solution::empty(universe);
        for v in elements {
            if v >= universe {
                return Err(Error::invalid(format!(
                    "element {v} outside ground set of size {universe}"
                )));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Decodes the low `universe` bits of `mask`. Requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask encoding limited to 64 elements");
        let mut s = Solution::empty(universe);
        if universe > 0 {
            let clipped = if universe == WORD {
                mask
            } else {
                mask & ((1u64 << universe) - 1)
            };
            s.words[0] = clipped;
            s.len = clipped.count_ones() as usize;
        }
        s
    }

    /// Encodes as a bitmask. Requires `universe <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.universe <= WORD, "mask encoding limited to 64 elements");
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: ElementId) -> bool {
        v < self.universe && self.words[v / WORD] & (1 << (v % WORD)) != 0
    }

    /// Inserts `v`, returning whether it was absent. Panics if `v` is out of range.
    pub fn insert(&mut self, v: ElementId) -> bool {
        assert!(v < self.universe, "element {v} outside ground set");
        let w = &mut self.words[v / WORD];
        let bit = 1 << (v % WORD);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, v: ElementId) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.words[v / WORD] &= !(1 << (v % WORD));
        self.len -= 1;
        true
    }

    /// Copy of `self` with `v` added.
    pub fn with(&self, v: ElementId) -> Solution {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn is_subset(&self, other: &Solution) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Solution) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn intersection_len(&self, other: &Solution) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Hamming distance between characteristic vectors.
    pub fn symmetric_difference_len(&self, other: &Solution) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Number of elements of `self` missing from `other`.
    pub fn difference_len(&self, other: &Solution) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub fn union_with(&mut self, other: &Solution) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn intersect(&self, other: &Solution) -> Solution {
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        Solution {
            words,
            universe: self.universe,
            len,
        }
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Indexed list of `r` solutions (duplicates allowed) together with the
/// per-element representation counts `n_v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionMultiset {
    universe: usize,
    solutions: Vec<Solution>,
    counts: Vec<u32>,
}

impl SolutionMultiset {
    pub fn new(universe: usize, solutions: Vec<Solution>) -> Result<Self> {
        let mut counts = vec![0u32; universe];
        for s in &solutions {
            if s.universe() != universe {
                return Err(Error::invalid(format!(
                    "solution over ground set {} in a multiset over {universe}",
                    s.universe()
                )));
            }
            for v in s.iter() {
                counts[v] += 1;
            }
        }
        Ok(SolutionMultiset {
            universe,
            solutions,
            counts,
        })
    }

    /// `r` indexed copies of `x`.
    pub fn replicate(x: &Solution, r: usize) -> Self {
        let mut counts = vec![0u32; x.universe()];
        for v in x.iter() {
            counts[v] = r as u32;
        }
        SolutionMultiset {
            universe: x.universe(),
            solutions: vec![x.clone(); r],
            counts,
        }
    }

    /// Adds `v` to solution `index`, keeping counts consistent.
    pub fn insert(&mut self, index: usize, v: ElementId) -> Result<()> {
        let s = self
            .solutions
            .get_mut(index)
            .ok_or_else(|| Error::invalid(format!("no solution at index {index}")))?;
        if v >= self.universe {
            return Err(Error::invalid(format!("element {v} outside ground set")));
        }
        if !s.insert(v) {
            return Err(Error::invalid(format!(
                "element {v} already in solution {index}"
            )));
        }
        self.counts[v] += 1;
        Ok(())
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Multiset size `r`.
    #[inline]
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn solutions(&self) -> &[Solution] {
        &self.solutions
    }

    pub fn get(&self, index: usize) -> Option<&Solution> {
        self.solutions.get(index)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    #[inline]
    pub fn count(&self, v: ElementId) -> u32 {
        self.counts[v]
    }

    /// Distance-sum diversity of the multiset.
    pub fn ss(&self) -> u64 {
        crate::diversity::pairwise_distance_sum(self)
    }

    /// Restriction `{x ∩ part : x ∈ P}`.
    pub fn restrict(&self, part: &Solution) -> SolutionMultiset {
        let solutions = self.solutions.iter().map(|s| s.intersect(part)).collect();
        SolutionMultiset::new(self.universe, solutions).expect("same universe")
    }
}
