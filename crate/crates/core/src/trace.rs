//! Per-iteration records of a greedy run.

use crate::objectives::Value;
use crate::solution::{ElementId, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Building the elements shared by every solution.
    Common,
    /// Growing individual solutions.
    Diverse,
}

/// One insertion of `element` into solution `solution`.
///
/// In the common phase there is a single partial solution, recorded as
/// index 0, and `ss_after` is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub phase: Phase,
    pub solution: usize,
    pub element: ElementId,
    /// `n_element(P)` just before the insertion.
    pub count_before: u32,
    pub gain: Value,
    pub ss_after: u64,
    /// Objective value of the modified solution after the insertion.
    pub value_after: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    /// Solution every output solution starts from: the common elements, or
    /// the seed singleton.
    pub start: Solution,
    /// Objective value of `start`.
    pub start_value: Value,
    /// Seed element, for runs that use one.
    pub seed: Option<ElementId>,
    pub r: usize,
    pub steps: Vec<TraceStep>,
}

impl RunTrace {
    pub(crate) fn new(start: Solution, start_value: Value, seed: Option<ElementId>, r: usize) -> Self {
        RunTrace {
            start,
            start_value,
            seed,
            r,
            steps: Vec::new(),
        }
    }

    pub fn diverse_steps(&self) -> impl Iterator<Item = &TraceStep> {
        self.steps.iter().filter(|s| s.phase == Phase::Diverse)
    }

    /// `ss(P_t)` for `t = 0..=T` over the diversifying steps, starting at 0.
    pub fn ss_series(&self) -> Vec<u64> {
        std::iter::once(0)
            .chain(self.diverse_steps().map(|s| s.ss_after))
            .collect()
    }

    /// Objective value of every solution after diversifying step `t`
    /// (`t = 0` is the starting multiset).
    pub fn values_after(&self, t: usize) -> Vec<Value> {
        let mut values = vec![self.start_value; self.r];
        for s in self.diverse_steps().take(t) {
            values[s.solution] = s.value_after;
        }
        values
    }

    /// Size of solution `index` right after its last strictly improving
    /// insertion (its starting size if none improved it).
    pub fn improving_size(&self, index: usize) -> usize {
        let mut size = self.start.len();
        let mut last = size;
        for s in self.diverse_steps().filter(|s| s.solution == index) {
            size += 1;
            if s.gain > 0 {
                last = size;
            }
        }
        last
    }
}

/// Result of either greedy algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub multiset: crate::solution::SolutionMultiset,
    pub trace: RunTrace,
    /// Objective value of each output solution, by index.
    pub values: Vec<Value>,
}

impl RunOutput {
    pub fn min_value(&self) -> Value {
        self.values.iter().copied().min().unwrap_or(0)
    }

    pub fn max_value(&self) -> Value {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn mean_value(&self) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        self.values.iter().sum::<Value>() as f64 / self.values.len() as f64
    }

    pub fn ss(&self) -> u64 {
        self.multiset.ss()
    }
}
