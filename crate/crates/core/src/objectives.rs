//! Monotone submodular value oracles and an exhaustive property certifier.
//!
//! Values are exact integers so that the greedy tie-breaking, which compares
//! objective values lexicographically, is deterministic.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solution::{ElementId, Solution};

pub type Value = i64;

/// Set function `f` with `f(∅) = 0`, evaluated directly or incrementally.
///
/// `State` summarizes a partial solution so marginal gains are cheap; the
/// greedy algorithms keep one state per solution they grow.
pub trait ValueOracle: Send + Sync {
    type State: Clone + Send + Sync;

    fn ground_size(&self) -> usize;

    fn value(&self, x: &Solution) -> Value;

    fn state_of(&self, x: &Solution) -> Self::State;

    fn state_value(&self, state: &Self::State) -> Value;

    /// `f(x ∪ {v}) − f(x)` for the `x` summarized by `state`, `v ∉ x`.
    fn state_gain(&self, state: &Self::State, v: ElementId) -> Value;

    fn state_insert(&self, state: &mut Self::State, v: ElementId);
}

impl<F: ValueOracle + ?Sized> ValueOracle for &F {
    type State = F::State;
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn value(&self, x: &Solution) -> Value {
        (**self).value(x)
    }
    fn state_of(&self, x: &Solution) -> Self::State {
        (**self).state_of(x)
    }
    fn state_value(&self, state: &Self::State) -> Value {
        (**self).state_value(state)
    }
    fn state_gain(&self, state: &Self::State, v: ElementId) -> Value {
        (**self).state_gain(state, v)
    }
    fn state_insert(&self, state: &mut Self::State, v: ElementId) {
        (**self).state_insert(state, v)
    }
}

/// `f(x ∪ {v}) − f(x)`; rejects `v ∈ x`.
pub fn marginal_gain<F: ValueOracle + ?Sized>(f: &F, x: &Solution, v: ElementId) -> Result<Value> {
    if x.contains(v) {
        return Err(Error::invalid(format!("element {v} already in {x:?}")));
    }
    if v >= f.ground_size() {
        return Err(Error::invalid(format!("element {v} outside ground set")));
    }
    Ok(f.state_gain(&f.state_of(x), v))
}

/// Number of vertices in `x` or adjacent to it.
#[derive(Clone, Debug)]
pub struct VertexCoverage {
    closed: Vec<Solution>,
}

/// Covered-vertex bitmask of a partial solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covered(Solution);

impl VertexCoverage {
    pub fn new(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let closed = (0..n)
            .map(|v| {
                let mut s = Solution::empty(n);
                s.insert(v);
                for &u in graph.neighbors(v) {
                    s.insert(u);
                }
                s
            })
            .collect();
        VertexCoverage { closed }
    }

    /// `{v} ∪ N(v)`.
    pub fn closed_neighborhood(&self, v: ElementId) -> &Solution {
        &self.closed[v]
    }
}

impl ValueOracle for VertexCoverage {
    type State = Covered;

    fn ground_size(&self) -> usize {
        self.closed.len()
    }

    fn value(&self, x: &Solution) -> Value {
        self.state_value(&self.state_of(x))
    }

    fn state_of(&self, x: &Solution) -> Covered {
        let mut covered = Solution::empty(self.closed.len());
        for v in x.iter() {
            covered.union_with(&self.closed[v]);
        }
        Covered(covered)
    }

    fn state_value(&self, state: &Covered) -> Value {
        state.0.len() as Value
    }

    fn state_gain(&self, state: &Covered, v: ElementId) -> Value {
        self.closed[v].difference_len(&state.0) as Value
    }

    fn state_insert(&self, state: &mut Covered, v: ElementId) {
        state.0.union_with(&self.closed[v]);
    }
}

/// `f(x) = Σ_{v ∈ x} w_v` with nonnegative integer weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularObjective {
    weights: Vec<Value>,
}

impl ModularObjective {
    pub fn new(weights: Vec<Value>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|&&w| w < 0) {
            return Err(Error::invalid(format!("negative weight {w}")));
        }
        Ok(ModularObjective { weights })
    }

    pub fn weights(&self) -> &[Value] {
        &self.weights
    }
}

impl ValueOracle for ModularObjective {
    type State = Value;

    fn ground_size(&self) -> usize {
        self.weights.len()
    }
    fn value(&self, x: &Solution) -> Value {
        x.iter().map(|v| self.weights[v]).sum()
    }
    fn state_of(&self, x: &Solution) -> Value {
        self.value(x)
    }
    fn state_value(&self, state: &Value) -> Value {
        *state
    }
    fn state_gain(&self, _state: &Value, v: ElementId) -> Value {
        self.weights[v]
    }
    fn state_insert(&self, state: &mut Value, v: ElementId) {
        *state += self.weights[v];
    }
}

/// Black-box set function; every gain is two full evaluations.
pub struct FnObjective<F> {
    n: usize,
    f: F,
}

impl<F: Fn(&Solution) -> Value + Send + Sync> FnObjective<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnObjective { n, f }
    }
}

impl<F: Fn(&Solution) -> Value + Send + Sync> ValueOracle for FnObjective<F> {
    type State = (Solution, Value);

    fn ground_size(&self) -> usize {
        self.n
    }
    fn value(&self, x: &Solution) -> Value {
        (self.f)(x)
    }
    fn state_of(&self, x: &Solution) -> Self::State {
        (x.clone(), (self.f)(x))
    }
    fn state_value(&self, state: &Self::State) -> Value {
        state.1
    }
    fn state_gain(&self, state: &Self::State, v: ElementId) -> Value {
        (self.f)(&state.0.with(v)) - state.1
    }
    fn state_insert(&self, state: &mut Self::State, v: ElementId) {
        state.0.insert(v);
        state.1 = (self.f)(&state.0);
    }
}

/// Counts value and marginal-gain evaluations.
#[derive(Debug)]
pub struct CountingObjective<F> {
    inner: F,
    calls: AtomicU64,
}

impl<F> CountingObjective<F> {
    pub fn new(inner: F) -> Self {
        CountingObjective {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }

    fn tick(&self) {
        self.calls.fetch_add(1, Ordering::Relaxed);
    }
}

impl<F: ValueOracle> ValueOracle for CountingObjective<F> {
    type State = F::State;

    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn value(&self, x: &Solution) -> Value {
        self.tick();
        self.inner.value(x)
    }
    fn state_of(&self, x: &Solution) -> Self::State {
        self.inner.state_of(x)
    }
    fn state_value(&self, state: &Self::State) -> Value {
        self.inner.state_value(state)
    }
    fn state_gain(&self, state: &Self::State, v: ElementId) -> Value {
        self.tick();
        self.inner.state_gain(state, v)
    }
    fn state_insert(&self, state: &mut Self::State, v: ElementId) {
        self.inner.state_insert(state, v)
    }
}

/// Largest ground set [`certify_monotone_submodular`] will enumerate.
pub const CERTIFY_MAX_GROUND: usize = 12;

/// First property failure found by [`certify_monotone_submodular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyViolation {
    /// `f(x ∪ {v}) < f(x)`.
    NotMonotone { x: Solution, v: ElementId },
    /// `f(x+u) + f(x+v) < f(x+u+v) + f(x)`: adding `u` first raises the gain of `v`.
    NotSubmodular {
        x: Solution,
        u: ElementId,
        v: ElementId,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    MonotoneSubmodular,
    Violated(PropertyViolation),
}

impl Certificate {
    pub fn holds(&self) -> bool {
        matches!(self, Certificate::MonotoneSubmodular)
    }
}

/// Exhaustively checks monotonicity and diminishing returns over all
/// subsets. Submodularity is tested in its local form, which is equivalent.
pub fn certify_monotone_submodular<F: ValueOracle + ?Sized>(
    f: &F,
    max_n: usize,
) -> Result<Certificate> {
    let n = f.ground_size();
    let limit = max_n.min(CERTIFY_MAX_GROUND);
    if n > limit {
        return Err(Error::TooLarge {
            what: "certification ground set",
            size: n,
            limit,
        });
    }
    let values: Vec<Value> = (0u64..1 << n)
        .map(|m| f.value(&Solution::from_mask(n, m)))
        .collect();
    for mask in 0usize..1 << n {
        for u in (0..n).filter(|u| mask & (1 << u) == 0) {
            if values[mask | 1 << u] < values[mask] {
                return Ok(Certificate::Violated(PropertyViolation::NotMonotone {
                    x: Solution::from_mask(n, mask as u64),
                    v: u,
                }));
            }
        }
    }
    for mask in 0usize..1 << n {
        for u in (0..n).filter(|u| mask & (1 << u) == 0) {
            for v in (u + 1..n).filter(|v| mask & (1 << v) == 0) {
                let lhs = values[mask | 1 << u] + values[mask | 1 << v];
                let rhs = values[mask | 1 << u | 1 << v] + values[mask];
                if lhs < rhs {
                    return Ok(Certificate::Violated(PropertyViolation::NotSubmodular {
                        x: Solution::from_mask(n, mask as u64),
                        u,
                        v,
                    }));
                }
            }
        }
    }
    Ok(Certificate::MonotoneSubmodular)
}
