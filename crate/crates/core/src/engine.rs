//! Shared loop for the diversifying phase of both greedy algorithms: keep a
//! keyed pool of (solution, element) candidates, insert the smallest, and
//! refresh only the entries the insertion touched.

use crate::diversity::delta;
use crate::matroids::IndependenceOracle;
use crate::objectives::{Value, ValueOracle};
use crate::pool::{Key, Pool};
use crate::solution::{Solution, SolutionMultiset};
use crate::trace::{Phase, RunTrace, TraceStep};

/// What a selection key may depend on.
#[derive(Clone, Copy, Debug)]
pub(crate) struct KeyInputs {
    pub size: usize,
    /// Number of feasible extensions of the solution, ignoring the count cap.
    pub kappa: usize,
    pub value: Value,
    pub gain: Value,
    pub count: u32,
}

pub(crate) struct Rule {
    /// Elements whose count has reached `cap` never enter the pool.
    pub cap: u32,
    pub key: fn(&KeyInputs) -> Key,
}

pub(crate) struct PhaseOutput {
    pub multiset: SolutionMultiset,
    pub values: Vec<Value>,
}

struct Run<'a, F: ValueOracle, C: IndependenceOracle + ?Sized> {
    f: &'a F,
    c: &'a C,
    rule: &'a Rule,
    p: SolutionMultiset,
    states: Vec<F::State>,
    values: Vec<Value>,
    kappa: Vec<usize>,
    pool: Pool,
}

impl<F: ValueOracle, C: IndependenceOracle + ?Sized> Run<'_, F, C> {
    fn key(&self, z: usize, gain: Value, count: u32) -> Key {
        (self.rule.key)(&KeyInputs {
            size: self.p.solutions()[z].len(),
            kappa: self.kappa[z],
            value: self.values[z],
            gain,
            count,
        })
    }

    fn refresh(&mut self, z: usize) {
        self.pool.clear_solution(z);
        let n = self.p.universe();
        let mut feasible = Vec::new();
        for u in 0..n {
            if !self.p.solutions()[z].contains(u) && self.c.can_add(&self.p.solutions()[z], u) {
                feasible.push(u);
            }
        }
        self.kappa[z] = feasible.len();
        for u in feasible {
            let count = self.p.count(u);
            if count >= self.rule.cap {
                continue;
            }
            let gain = self.f.state_gain(&self.states[z], u);
            if gain >= 0 {
                let key = self.key(z, gain, count);
                self.pool.put(z, u, key, gain);
            }
        }
    }
}

/// Grows `r` copies of `start` until no candidate remains, appending one
/// trace step per insertion.
pub(crate) fn diversify<F, C>(
    f: &F,
    c: &C,
    start: &Solution,
    r: usize,
    rule: &Rule,
    trace: &mut RunTrace,
) -> PhaseOutput
where
    F: ValueOracle,
    C: IndependenceOracle + ?Sized,
{
    let n = start.universe();
    let state = f.state_of(start);
    let value = f.state_value(&state);
    let mut run = Run {
        f,
        c,
        rule,
        p: SolutionMultiset::replicate(start, r),
        states: vec![state; r],
        values: vec![value; r],
        kappa: vec![0; r],
        pool: Pool::new(r, n),
    };
    for z in 0..r {
        run.refresh(z);
    }
    let mut ss = run.p.ss() as i64;
    while let Some((y, v, gain)) = run.pool.first() {
        let count_before = run.p.count(v);
        run.p
            .insert(y, v)
            .expect("pool only holds elements absent from their solution");
        f.state_insert(&mut run.states[y], v);
        run.values[y] += gain;
        ss += delta(r as i64, count_before as i64);
        let count = count_before + 1;
        for z in (0..r).filter(|&z| z != y) {
            if let Some(g) = run.pool.remove(z, v) {
                if count < rule.cap {
                    let key = run.key(z, g, count);
                    run.pool.put(z, v, key, g);
                }
            }
        }
        run.refresh(y);
        trace.steps.push(TraceStep {
            phase: Phase::Diverse,
            solution: y,
            element: v,
            count_before,
            gain,
            ss_after: ss as u64,
            value_after: run.values[y],
        });
    }
    debug_assert_eq!(ss as u64, run.p.ss());
    debug_assert_eq!(run.pool.len(), 0);
    PhaseOutput {
        multiset: run.p,
        values: run.values,
    }
}
