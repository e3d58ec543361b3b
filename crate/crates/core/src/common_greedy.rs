//! Greedy with common elements: a classical greedy prefix of `b` elements
//! shared by every solution, followed by a diversity-driven extension phase.

use crate::diversity::g;
use crate::engine::{diversify, KeyInputs, Rule};
use crate::error::{Error, Result};
use crate::matroids::{closure_of, Matroid};
use crate::objectives::{Value, ValueOracle};
use crate::pool::Key;
use crate::solution::{ElementId, Solution};
use crate::trace::{Phase, RunOutput, RunTrace, TraceStep};
use crate::verify::{at_least, at_least_int, equals_int, greedy_factor, int, ratio, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommonGreedyConfig {
    /// Number of common elements.
    pub b: usize,
    /// Number of solutions, at least 2.
    pub r: usize,
}

fn common_key(k: &KeyInputs) -> Key {
    [k.count as Value, k.kappa as Value, k.value, -k.gain]
}

/// Classical greedy for at most `b` steps. Ties go to the smallest id.
pub fn greedy_prefix<F, M>(f: &F, m: &M, b: usize, trace: Option<&mut Vec<TraceStep>>) -> Solution
where
    F: ValueOracle,
    M: Matroid + ?Sized,
{
    let n = f.ground_size();
    let mut x = Solution::empty(n);
    let mut state = f.state_of(&x);
    let mut value = f.state_value(&state);
    let mut steps = Vec::new();
    while x.len() < b {
        let mut best: Option<(ElementId, Value)> = None;
        for v in (0..n).filter(|&v| !x.contains(v)) {
            if !m.can_add(&x, v) {
                continue;
            }
            let gain = f.state_gain(&state, v);
            if best.is_none_or(|(_, bg)| gain > bg) {
                best = Some((v, gain));
            }
        }
        let Some((v, gain)) = best else { break };
        x.insert(v);
        f.state_insert(&mut state, v);
        value += gain;
        steps.push(TraceStep {
            phase: Phase::Common,
            solution: 0,
            element: v,
            count_before: 0,
            gain,
            ss_after: 0,
            value_after: value,
        });
    }
    if let Some(t) = trace {
        t.extend(steps);
    }
    x
}

/// Runs both phases. `b` may equal the rank, in which case every solution is
/// the greedy base and diversity is 0.
pub fn run_common_greedy<F, M>(f: &F, m: &M, cfg: CommonGreedyConfig) -> Result<RunOutput>
where
    F: ValueOracle,
    M: Matroid + ?Sized,
{
    let n = f.ground_size();
    if m.ground_size() != n {
        return Err(Error::invalid(format!(
            "objective has {n} elements, constraint has {}",
            m.ground_size()
        )));
    }
    if cfg.r < 2 {
        return Err(Error::invalid(format!("r must be at least 2, got {}", cfg.r)));
    }
    let rank = m.rank();
    if cfg.b > rank {
        return Err(Error::invalid(format!(
            "b = {} exceeds the constraint rank {rank}",
            cfg.b
        )));
    }
    let mut common_steps = Vec::new();
    let x = greedy_prefix(f, m, cfg.b, Some(&mut common_steps));
    let x_value = common_steps.last().map_or_else(|| f.value(&x), |s| s.value_after);
    let mut trace = RunTrace::new(x.clone(), x_value, None, cfg.r);
    trace.steps = common_steps;
    let rule = Rule {
        cap: cfg.r.div_ceil(2) as u32,
        key: common_key,
    };
    let out = diversify(f, m, &x, cfg.r, &rule, &mut trace);
    Ok(RunOutput {
        multiset: out.multiset,
        trace,
        values: out.values,
    })
}

/// Uniform matroids: the final diversity equals `g(|V|−b, K−b, r)`.
pub fn verify_uniform_exact_ss(out: &RunOutput, n: usize, k: usize, b: usize, r: usize) -> Verdict {
    let mut v = Verdict::default();
    let want = g((n - b) as u64, k.saturating_sub(b) as u64, r as u64);
    v.push(equals_int("ss equals g(|V|-b, K-b, r)", out.ss(), want));
    v
}

/// Lower bound `g(r_M−b−1, r_M−b−1, r) + g(m, 1, r)` with
/// `m = |V \ cl(x)| − r_M + b + 1`, for `b < r_M`.
pub fn matroid_ss_lower_bound<M: Matroid + ?Sized>(m: &M, x: &Solution, b: usize, r: usize) -> Result<u64> {
    let rank = m.rank();
    if b >= rank {
        return Err(Error::invalid(format!("b = {b} must be below the rank {rank}")));
    }
    let cl = closure_of(m, x)?;
    let outside = (m.ground_size() - cl.len()) as i64;
    let mm = (outside - rank as i64 + b as i64 + 1).max(0) as u64;
    let free = (rank - b - 1) as u64;
    Ok(g(free, free, r as u64) + g(mm, 1, r as u64))
}

pub fn verify_matroid_ss_bound<M: Matroid + ?Sized>(out: &RunOutput, m: &M, b: usize, r: usize) -> Result<Verdict> {
    let mut v = Verdict::default();
    let bound = matroid_ss_lower_bound(m, &out.trace.start, b, r)?;
    v.push(at_least_int("ss matroid lower bound", out.ss(), bound));
    Ok(v)
}

/// Which approximation factor applies to the common prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase1Regime {
    Uniform { cap: usize },
    /// `k` is one less than the smallest dependent set size; `None` when
    /// every set is independent.
    Matroid { rank: usize, k: Option<usize> },
}

/// `f(x) ≥ factor · OPT` for the common prefix `x`, given the exact optimum.
pub fn verify_phase1_objective(
    x_value: Value,
    b: usize,
    regime: Phase1Regime,
    opt: Value,
) -> Verdict {
    let mut v = Verdict::default();
    let factor = match regime {
        Phase1Regime::Uniform { cap } => greedy_factor(cap as u64, b as u64),
        Phase1Regime::Matroid { rank, k } => {
            if rank == 0 {
                int(0)
            } else {
                let e = k.map_or(b, |k| k.min(b));
                let a = greedy_factor(rank as u64, e as u64);
                let half = ratio(b as i64, 2 * rank as i64);
                a.max(half)
            }
        }
    };
    v.push(at_least(
        "common prefix value vs factor * OPT",
        int(x_value),
        factor * int(opt),
    ));
    v
}

/// Structural checks every run must pass: feasibility, every solution
/// contains the prefix, and diversity never drops during the second phase.
pub fn verify_structure<M: Matroid + ?Sized>(out: &RunOutput, m: &M) -> Verdict {
    let mut v = Verdict::default();
    let feasible = out
        .multiset
        .solutions()
        .iter()
        .filter(|s| m.is_independent(s))
        .count() as u64;
    v.push(equals_int(
        "independent solutions",
        feasible,
        out.multiset.len() as u64,
    ));
    let containing = out
        .multiset
        .solutions()
        .iter()
        .filter(|s| out.trace.start.is_subset(s))
        .count() as u64;
    v.push(equals_int(
        "solutions containing the prefix",
        containing,
        out.multiset.len() as u64,
    ));
    let series = out.trace.ss_series();
    let drops = series.windows(2).filter(|w| w[1] < w[0]).count() as u64;
    v.push(equals_int("diversity drops in phase 2", drops, 0));
    v
}
