//! Independence oracles: uniform, partition and explicitly enumerated
//! matroids, intersections of matroids, and call-counting wrappers.
//!
//! Rank and closure are computed greedily through the oracle, which is only
//! correct for honest matroids. Intersections expose independence alone.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::solution::{ElementId, Solution};

/// Downward-closed family of feasible sets, queried one set at a time.
pub trait IndependenceOracle: Send + Sync {
    fn ground_size(&self) -> usize;

    fn is_independent(&self, x: &Solution) -> bool;

    /// Whether `x ∪ {v}` is independent, for independent `x` and `v ∉ x`.
    fn can_add(&self, x: &Solution, v: ElementId) -> bool {
        self.is_independent(&x.with(v))
    }
}

/// An independence oracle whose family satisfies the matroid axioms.
pub trait Matroid: IndependenceOracle {
    /// Rank of the whole ground set.
    fn rank(&self) -> usize {
        rank_of(self, &Solution::full(self.ground_size()))
    }
}

impl<T: IndependenceOracle + ?Sized> IndependenceOracle for &T {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, x: &Solution) -> bool {
        (**self).is_independent(x)
    }
    fn can_add(&self, x: &Solution, v: ElementId) -> bool {
        (**self).can_add(x, v)
    }
}

impl<T: Matroid + ?Sized> Matroid for &T {
    fn rank(&self) -> usize {
        (**self).rank()
    }
}

impl<T: IndependenceOracle + ?Sized> IndependenceOracle for Box<T> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, x: &Solution) -> bool {
        (**self).is_independent(x)
    }
    fn can_add(&self, x: &Solution, v: ElementId) -> bool {
        (**self).can_add(x, v)
    }
}

impl<T: Matroid + ?Sized> Matroid for Box<T> {
    fn rank(&self) -> usize {
        (**self).rank()
    }
}

/// Size of the largest independent subset of `x`, by greedy scan.
pub fn rank_of<M: Matroid + ?Sized>(m: &M, x: &Solution) -> usize {
    let mut kept = Solution::empty(m.ground_size());
    for v in x.iter() {
        if m.can_add(&kept, v) {
            kept.insert(v);
        }
    }
    kept.len()
}

/// `cl(x) = x ∪ {v : x ∪ {v} dependent}` for independent `x`.
pub fn closure_of<M: Matroid + ?Sized>(m: &M, x: &Solution) -> Result<Solution> {
    if !m.is_independent(x) {
        return Err(Error::invalid(format!("closure of dependent set {x:?}")));
    }
    let mut cl = x.clone();
    for v in 0..m.ground_size() {
        if !x.contains(v) && !m.can_add(x, v) {
            cl.insert(v);
        }
    }
    Ok(cl)
}

/// All `u ∉ z` such that `z ∪ {u}` stays feasible.
pub fn feasible_extensions<C: IndependenceOracle + ?Sized>(c: &C, z: &Solution) -> Solution {
    let mut out = Solution::empty(c.ground_size());
    for u in 0..c.ground_size() {
        if !z.contains(u) && c.can_add(z, u) {
            out.insert(u);
        }
    }
    out
}

/// Whether some singleton is dependent.
pub fn has_loops<C: IndependenceOracle + ?Sized>(c: &C) -> bool {
    let empty = Solution::empty(c.ground_size());
    (0..c.ground_size()).any(|v| !c.can_add(&empty, v))
}

/// Sets of size at most `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformMatroid {
    n: usize,
    k: usize,
}

impl UniformMatroid {
    pub fn new(n: usize, k: usize) -> Self {
        UniformMatroid { n, k }
    }

    pub fn cap(&self) -> usize {
        self.k
    }
}

impl IndependenceOracle for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn is_independent(&self, x: &Solution) -> bool {
        x.len() <= self.k
    }
    fn can_add(&self, x: &Solution, _v: ElementId) -> bool {
        x.len() < self.k
    }
}

impl Matroid for UniformMatroid {
    fn rank(&self) -> usize {
        self.k.min(self.n)
    }
}

/// Sets meeting every block `B_i` in at most `d_i` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionMatroid {
    block_of: Vec<usize>,
    caps: Vec<usize>,
    blocks: Vec<Solution>,
}

impl PartitionMatroid {
    /// `block_of[v]` names the block of `v`; blocks are `0..caps.len()`.
    pub fn from_assignment(block_of: Vec<usize>, caps: Vec<usize>) -> Result<Self> {
        let n = block_of.len();
        let mut blocks = vec![Solution::empty(n); caps.len()];
        for (v, &b) in block_of.iter().enumerate() {
            let block = blocks.get_mut(b).ok_or_else(|| {
                Error::invalid(format!("element {v} assigned to missing block {b}"))
            })?;
            block.insert(v);
        }
        Ok(PartitionMatroid {
            block_of,
            caps,
            blocks,
        })
    }

    /// Blocks must partition `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<ElementId>], caps: &[usize]) -> Result<Self> {
        if blocks.len() != caps.len() {
            return Err(Error::invalid(format!(
                "{} blocks but {} caps",
                blocks.len(),
                caps.len()
            )));
        }
        let mut block_of = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            for &v in block {
                if v >= n {
                    return Err(Error::invalid(format!("element {v} outside ground set {n}")));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::invalid(format!("element {v} in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::invalid(format!("element {v} in no block")));
        }
        Self::from_assignment(block_of, caps.to_vec())
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    pub fn blocks(&self) -> &[Solution] {
        &self.blocks
    }

    pub fn block_of(&self, v: ElementId) -> usize {
        self.block_of[v]
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Solution::len).collect()
    }

    /// Parses the `cap: id id ...` format (1-based ids, one block per line,
    /// `#` comments) over a ground set of size `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut caps = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            let (cap, ids) = line
                .split_once(':')
                .ok_or_else(|| parse_err("expected `cap: id id ...`".into()))?;
            let cap: usize = cap
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad cap {cap:?}: {e}")))?;
            let mut block = Vec::new();
            for tok in ids.split_whitespace() {
                let id: usize = tok
                    .parse()
                    .map_err(|e| parse_err(format!("bad id {tok:?}: {e}")))?;
                if id == 0 || id > n {
                    return Err(parse_err(format!("id {id} outside 1..={n}")));
                }
                block.push(id - 1);
            }
            blocks.push(block);
            caps.push(cap);
        }
        Self::from_blocks(n, &blocks, &caps)
    }

    /// Inverse of [`PartitionMatroid::parse`].
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (block, cap) in self.blocks.iter().zip(&self.caps) {
            write!(out, "{cap}:").unwrap();
            for v in block.iter() {
                write!(out, " {}", v + 1).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl IndependenceOracle for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.block_of.len()
    }
    fn is_independent(&self, x: &Solution) -> bool {
        self.blocks
            .iter()
            .zip(&self.caps)
            .all(|(b, &cap)| x.intersection_len(b) <= cap)
    }
    fn can_add(&self, x: &Solution, v: ElementId) -> bool {
        let b = self.block_of[v];
        x.intersection_len(&self.blocks[b]) < self.caps[b]
    }
}

impl Matroid for PartitionMatroid {
    fn rank(&self) -> usize {
        self.blocks
            .iter()
            .zip(&self.caps)
            .map(|(b, &cap)| b.len().min(cap))
            .sum()
    }
}

/// Largest ground set an [`ExplicitMatroid`] may enumerate.
pub const EXPLICIT_MAX_GROUND: usize = 20;

/// A set family stored as a membership table over all `2^n` subsets.
///
/// Construction does not enforce the matroid axioms; [`axioms_check`] does.
#[derive(Clone, PartialEq, Eq)]
pub struct ExplicitMatroid {
    n: usize,
    member: Vec<bool>,
}

impl std::fmt::Debug for ExplicitMatroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExplicitMatroid")
            .field("n", &self.n)
            .field("independent_sets", &self.member.iter().filter(|&&b| b).count())
            .finish()
    }
}

impl ExplicitMatroid {
    fn check_size(n: usize) -> Result<()> {
        if n > EXPLICIT_MAX_GROUND {
            return Err(Error::TooLarge {
                what: "explicit ground set",
                size: n,
                limit: EXPLICIT_MAX_GROUND,
            });
        }
        Ok(())
    }

    /// Family given by bitmasks of its members.
    pub fn from_masks<I: IntoIterator<Item = u32>>(n: usize, masks: I) -> Result<Self> {
        Self::check_size(n)?;
        let mut member = vec![false; 1 << n];
        for m in masks {
            let idx = m as usize;
            if idx >= member.len() {
                return Err(Error::invalid(format!("mask {m:#b} outside ground set {n}")));
            }
            member[idx] = true;
        }
        Ok(ExplicitMatroid { n, member })
    }

    pub fn from_predicate<F: Fn(u32) -> bool>(n: usize, pred: F) -> Result<Self> {
        Self::check_size(n)?;
        let member = (0..1u32 << n).map(pred).collect();
        Ok(ExplicitMatroid { n, member })
    }

    /// Tabulates another oracle.
    pub fn materialize<C: IndependenceOracle + ?Sized>(c: &C) -> Result<Self> {
        let n = c.ground_size();
        Self::from_predicate(n, |m| c.is_independent(&Solution::from_mask(n, m as u64)))
    }

    /// Like [`ExplicitMatroid::from_masks`] but rejects non-matroids.
    pub fn try_from_masks<I: IntoIterator<Item = u32>>(n: usize, masks: I) -> Result<Self> {
        let m = Self::from_masks(n, masks)?;
        match axioms_check(&m)? {
            AxiomReport::Holds => Ok(m),
            AxiomReport::Violated(v) => Err(Error::invalid(format!("not a matroid: {v:?}"))),
        }
    }

    #[inline]
    pub fn contains_mask(&self, mask: u32) -> bool {
        self.member[mask as usize]
    }

    pub fn independent_masks(&self) -> impl Iterator<Item = u32> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(m, _)| m as u32)
    }
}

impl IndependenceOracle for ExplicitMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn is_independent(&self, x: &Solution) -> bool {
        self.member[x.to_mask() as usize]
    }
    fn can_add(&self, x: &Solution, v: ElementId) -> bool {
        self.member[(x.to_mask() | 1 << v) as usize]
    }
}

impl Matroid for ExplicitMatroid {}

/// First axiom violation found by [`axioms_check`]. Sets are bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// The empty set is not a member.
    EmptyMissing,
    /// `superset` is a member while its subset `subset` is not.
    NotHereditary { superset: u32, subset: u32 },
    /// No element of `larger \ smaller` extends `smaller`.
    NoExchange { smaller: u32, larger: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomReport {
    Holds,
    Violated(AxiomViolation),
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        matches!(self, AxiomReport::Holds)
    }
}

/// Exhaustively verifies the three matroid axioms.
///
/// Exchange is checked through the rank function `r(A) = max{|X| : X ⊆ A,
/// X ∈ I}`: a hereditary family is a matroid iff `r` is submodular, and a
/// local failure `r(A+e) = r(A+f) = r(A) < r(A+e+f)` yields an explicit
/// non-augmentable pair.
pub fn axioms_check(m: &ExplicitMatroid) -> Result<AxiomReport> {
    ExplicitMatroid::check_size(m.n)?;
    let n = m.n;
    let total = 1usize << n;
    if !m.member[0] {
        return Ok(AxiomReport::Violated(AxiomViolation::EmptyMissing));
    }
    for set in 1..total {
        if !m.member[set] {
            continue;
        }
        let mut rest = set;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            if !m.member[set & !bit] {
                return Ok(AxiomReport::Violated(AxiomViolation::NotHereditary {
                    superset: set as u32,
                    subset: (set & !bit) as u32,
                }));
            }
        }
    }
    // best[A]: a largest independent subset of A.
    let mut best = vec![0u32; total];
    for set in 1..total {
        if m.member[set] {
            best[set] = set as u32;
            continue;
        }
        let mut rest = set;
        let mut pick = 0u32;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            let cand = best[set & !bit];
            if cand.count_ones() > pick.count_ones() {
                pick = cand;
            }
        }
        best[set] = pick;
    }
    let rank = |s: usize| best[s].count_ones();
    for set in 0..total {
        let base = rank(set);
        for e in 0..n {
            if set & (1 << e) != 0 {
                continue;
            }
            let with_e = set | 1 << e;
            if rank(with_e) != base {
                continue;
            }
            for f in e + 1..n {
                if set & (1 << f) != 0 {
                    continue;
                }
                let with_f = set | 1 << f;
                if rank(with_f) == base && rank(with_e | with_f) > base {
                    return Ok(AxiomReport::Violated(AxiomViolation::NoExchange {
                        smaller: best[set],
                        larger: best[with_e | with_f],
                    }));
                }
            }
        }
    }
    Ok(AxiomReport::Holds)
}

/// Sets independent in every member matroid.
pub struct IntersectionConstraint {
    members: Vec<Box<dyn Matroid>>,
    n: usize,
}

impl IntersectionConstraint {
    pub fn new(members: Vec<Box<dyn Matroid>>) -> Result<Self> {
        let n = members
            .first()
            .map(|m| m.ground_size())
            .ok_or_else(|| Error::invalid("intersection of zero matroids"))?;
        if members.iter().any(|m| m.ground_size() != n) {
            return Err(Error::invalid("intersection members over different ground sets"));
        }
        Ok(IntersectionConstraint { members, n })
    }

    pub fn members(&self) -> &[Box<dyn Matroid>] {
        &self.members
    }

    /// Number of intersected matroids.
    pub fn arity(&self) -> usize {
        self.members.len()
    }
}

impl IndependenceOracle for IntersectionConstraint {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn is_independent(&self, x: &Solution) -> bool {
        self.members.iter().all(|m| m.is_independent(x))
    }
    fn can_add(&self, x: &Solution, v: ElementId) -> bool {
        self.members.iter().all(|m| m.can_add(x, v))
    }
}

/// Counts every independence query made through it.
#[derive(Debug)]
pub struct CountingOracle<C> {
    inner: C,
    calls: AtomicU64,
}

impl<C> CountingOracle<C> {
    pub fn new(inner: C) -> Self {
        CountingOracle {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }
}

impl<C: IndependenceOracle> IndependenceOracle for CountingOracle<C> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn is_independent(&self, x: &Solution) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.is_independent(x)
    }
    fn can_add(&self, x: &Solution, v: ElementId) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.can_add(x, v)
    }
}

impl<C: Matroid> Matroid for CountingOracle<C> {
    // Uncounted: rank is setup, not part of an algorithm's query budget.
    fn rank(&self) -> usize {
        self.inner.rank()
    }
}
