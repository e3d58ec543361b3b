//! Greedy with representation limits: every solution starts from the best
//! singleton, grows in lockstep, and no other element may appear in more
//! than `l` solutions.

use num_rational::BigRational;

use crate::engine::{diversify, KeyInputs, Rule};
use crate::error::{Error, Result};
use crate::matroids::IndependenceOracle;
use crate::objectives::{Value, ValueOracle};
use crate::pool::Key;
use crate::solution::{ElementId, Solution, SolutionMultiset};
use crate::trace::{RunOutput, RunTrace};
use crate::verify::{at_least, at_least_int, equals_int, greedy_factor, int, ratio, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepLimitConfig {
    /// Number of solutions, at least 2.
    pub r: usize,
    /// Representation limit in `[1, r]`.
    pub l: usize,
}

fn replimit_key(k: &KeyInputs) -> Key {
    [k.size as Value, -k.gain, k.value, k.count as Value]
}

/// Feasible singleton of largest value, smallest id on ties.
pub fn best_singleton<F, C>(f: &F, c: &C) -> Option<(ElementId, Value)>
where
    F: ValueOracle,
    C: IndependenceOracle + ?Sized,
{
    let n = f.ground_size();
    let empty = Solution::empty(n);
    let mut best: Option<(ElementId, Value)> = None;
    for v in 0..n {
        if !c.can_add(&empty, v) {
            continue;
        }
        let value = f.value(&empty.with(v));
        if best.is_none_or(|(_, bv)| value > bv) {
            best = Some((v, value));
        }
    }
    best
}

pub fn run_replimit_greedy<F, C>(f: &F, c: &C, cfg: RepLimitConfig) -> Result<RunOutput>
where
    F: ValueOracle,
    C: IndependenceOracle + ?Sized,
{
    let n = f.ground_size();
    if c.ground_size() != n {
        return Err(Error::invalid(format!(
            "objective has {n} elements, constraint has {}",
            c.ground_size()
        )));
    }
    if cfg.r < 2 {
        return Err(Error::invalid(format!("r must be at least 2, got {}", cfg.r)));
    }
    if cfg.l < 1 || cfg.l > cfg.r {
        return Err(Error::invalid(format!(
            "l must lie in [1, {}], got {}",
            cfg.r, cfg.l
        )));
    }
    let (seed, seed_value) = best_singleton(f, c)
        .ok_or_else(|| Error::invalid("no feasible singleton: every element is a loop"))?;
    let start = Solution::empty(n).with(seed);
    let mut trace = RunTrace::new(start.clone(), seed_value, Some(seed), cfg.r);
    let rule = Rule {
        cap: cfg.l as u32,
        key: replimit_key,
    };
    let out = diversify(f, c, &start, cfg.r, &rule, &mut trace);
    Ok(RunOutput {
        multiset: out.multiset,
        trace,
        values: out.values,
    })
}

/// `⌊t/l⌋·l·(r−l) + c·(r−c)` with `c = t mod l`.
pub fn running_ss_bound(t: u64, r: u64, l: u64) -> u64 {
    let c = t % l;
    (t / l) * l * r.saturating_sub(l) + c * r.saturating_sub(c)
}

/// Checks that hold for every run: feasibility, the seed in every solution,
/// the representation cap, smallest-first growth, and the running diversity bound
/// at every iteration.
pub fn verify_structure<C: IndependenceOracle + ?Sized>(out: &RunOutput, c: &C, l: usize) -> Verdict {
    let mut v = Verdict::default();
    let p = &out.multiset;
    let r = p.len() as u64;
    let feasible = p.solutions().iter().filter(|s| c.is_independent(s)).count() as u64;
    v.push(equals_int("feasible solutions", feasible, r));
    let seed = out.trace.seed.expect("runs record their seed");
    let seeded = p.solutions().iter().filter(|s| s.contains(seed)).count() as u64;
    v.push(equals_int("solutions containing the seed", seeded, r));
    let over = (0..p.universe())
        .filter(|&u| u != seed && p.count(u) as usize > l)
        .count() as u64;
    v.push(equals_int("elements over the representation limit", over, 0));
    v.push(equals_int(
        "steps off a smallest extendable solution",
        off_smallest_steps(out, c, l),
        0,
    ));
    let series = out.trace.ss_series();
    let broken = series
        .iter()
        .enumerate()
        .filter(|&(t, &ss)| ss < running_ss_bound(t as u64, r, l as u64))
        .count() as u64;
    v.push(equals_int("iterations below the running diversity bound", broken, 0));
    v
}

/// Replays the trace and counts steps whose solution was not of least size
/// among those with an insertion allowed by `c` and the limit `l`.
fn off_smallest_steps<C: IndependenceOracle + ?Sized>(out: &RunOutput, c: &C, l: usize) -> u64 {
    let trace = &out.trace;
    let mut p = SolutionMultiset::replicate(&trace.start, trace.r);
    let mut off = 0;
    for step in trace.diverse_steps() {
        let extendable = |z: &Solution| {
            (0..p.universe())
                .any(|u| !z.contains(u) && (p.count(u) as usize) < l && c.is_independent(&z.with(u)))
        };
        let least = p
            .solutions()
            .iter()
            .filter(|z| extendable(z))
            .map(Solution::len)
            .min();
        if least != Some(p.solutions()[step.solution].len()) {
            off += 1;
        }
        if p.insert(step.solution, step.element).is_err() {
            off += 1;
        }
    }
    off
}

/// Iteration count of a run under a uniform cap `K`:
/// `min{r(K−1), l(|V|−1)}`.
pub fn uniform_iterations(n: usize, k: usize, r: usize, l: usize) -> u64 {
    let a = r as u64 * (k as u64).saturating_sub(1);
    let b = l as u64 * (n as u64).saturating_sub(1);
    a.min(b)
}

/// Uniform constraint of cap `k_cap`. `best_by_size[k]` is the largest value
/// of a set of at most `k` elements; every `k` in `[1, (r−1)K/l]` covered by
/// the table is checked. The diversity bound is checked for every `l`, the
/// objective bound only for `l < r`.
pub fn verify_uniform_guarantees(
    out: &RunOutput,
    n: usize,
    k_cap: usize,
    l: usize,
    best_by_size: &[Value],
) -> Verdict {
    let mut v = Verdict::default();
    let r = out.multiset.len();
    let min_f = int(out.min_value());
    if l < r {
        let limit = ratio(((r - 1) * k_cap) as i64, l as i64);
        let rounds = ratio((r - 1) as i64, l as i64) + int(1);
        for (k, &best) in best_by_size.iter().enumerate().skip(1) {
            if int(k as i64) > limit {
                break;
            }
            let factor = rounds.clone().min(int(k as i64));
            v.push(at_least(
                "uniform objective factor * min f vs best k-set",
                factor * min_f.clone(),
                int(best),
            ));
        }
    }
    let h = uniform_iterations(n, k_cap, r, l);
    v.push(at_least_int(
        "ss uniform lower bound",
        out.ss(),
        running_ss_bound(h, r as u64, l as u64),
    ));
    v
}

/// Matroid of rank `rank`, exact optimum `opt`.
pub fn verify_matroid_guarantees(out: &RunOutput, rank: usize, l: usize, opt: Value) -> Verdict {
    let mut v = Verdict::default();
    let r = out.multiset.len();
    if l < r {
        let factor = (ratio((r - 1) as i64, l as i64) + int(2)).min(int(rank as i64));
        v.push(at_least(
            "matroid objective factor * min f vs OPT",
            factor * int(out.min_value()),
            int(opt),
        ));
    }
    let bound = (l * r.saturating_sub(l) * rank.saturating_sub(1)) as u64;
    v.push(at_least_int("ss matroid lower bound", out.ss(), bound));
    v
}

/// Intersection of `arity` matroids whose largest feasible set has
/// `max_size` elements.
pub fn verify_intersection_guarantee(out: &RunOutput, arity: usize, max_size: usize, l: usize, opt: Value) -> Verdict {
    let mut v = Verdict::default();
    let r = out.multiset.len();
    if l < r {
        let factor =
            (ratio((r - 1) as i64, l as i64) + int(arity as i64 + 1)).min(int(max_size as i64));
        v.push(at_least(
            "intersection objective factor * min f vs OPT",
            factor * int(out.min_value()),
            int(opt),
        ));
    }
    v
}

/// The kind of constraint a run used, for benchmark comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    Uniform { cap: usize },
    Matroid,
    Intersection { arity: usize },
}

/// Compares `min f` on the output against the total value of an arbitrary
/// feasible collection `y`.
pub fn verify_benchmark<F, C>(
    out: &RunOutput,
    y: &[Solution],
    f: &F,
    c: &C,
    kind: ConstraintKind,
    l: usize,
) -> Result<Verdict>
where
    F: ValueOracle,
    C: IndependenceOracle + ?Sized,
{
    let mut v = Verdict::default();
    let r = out.multiset.len();
    if let Some(bad) = y.iter().position(|s| !c.is_independent(s)) {
        return Err(Error::invalid(format!("benchmark set {bad} is infeasible")));
    }
    if y.is_empty() || l >= r {
        return Ok(v);
    }
    let n = f.ground_size();
    let m = (0..n)
        .map(|u| y.iter().filter(|s| s.contains(u)).count())
        .max()
        .unwrap_or(0) as i64;
    let total_size: i64 = y.iter().map(|s| s.len() as i64).sum();
    let total_value: i64 = y.iter().map(|s| f.value(s)).sum();
    let ycount = y.len() as i64;
    let spread = ratio(m * (r as i64 - 1), l as i64);
    let factor = match kind {
        ConstraintKind::Uniform { cap } => {
            let h = if m == 0 || cap == 0 {
                int(1)
            } else {
                ratio(l as i64 * total_size, cap as i64 * m * (r as i64 - 1)).max(int(1))
            };
            spread * h + int(ycount)
        }
        ConstraintKind::Matroid => spread + int(2 * ycount),
        ConstraintKind::Intersection { arity } => spread + int((arity as i64 + 1) * ycount),
    };
    let factor = factor.min(int(total_size));
    v.push(at_least(
        "benchmark factor * min f vs total value",
        factor * int(out.min_value()),
        int(total_value),
    ));
    Ok(v)
}

/// Given pairwise disjoint nonempty feasible sets `y`, each an
/// `α`-approximation with `α = min f(y) / opt`, checks the resulting
/// approximation guarantees.
pub fn verify_disjoint_corollaries<F, C>(
    out: &RunOutput,
    y: &[Solution],
    f: &F,
    c: &C,
    kind: ConstraintKind,
    l: usize,
    opt: Value,
) -> Result<Verdict>
where
    F: ValueOracle,
    C: IndependenceOracle + ?Sized,
{
    let mut v = Verdict::default();
    let r = out.multiset.len();
    for (i, s) in y.iter().enumerate() {
        if s.is_empty() || !c.is_independent(s) {
            return Err(Error::invalid(format!("set {i} is empty or infeasible")));
        }
        if y[..i].iter().any(|t| !t.is_disjoint(s)) {
            return Err(Error::invalid(format!("set {i} overlaps an earlier set")));
        }
    }
    if y.is_empty() || l >= r || opt <= 0 {
        return Ok(v);
    }
    let k = y.len() as i64;
    let alpha = ratio(y.iter().map(|s| f.value(s)).min().unwrap_or(0), opt);
    let min_f = int(out.min_value());
    let wide = int((l as i64) * k) >= int(r as i64 - 1);
    match kind {
        ConstraintKind::Uniform { .. } => {
            if wide {
                v.push(at_least(
                    "min f vs alpha/2 * OPT",
                    min_f.clone(),
                    alpha.clone() * ratio(opt, 2),
                ));
            }
        }
        ConstraintKind::Matroid => {
            if wide {
                v.push(at_least(
                    "min f vs alpha/3 * OPT",
                    min_f.clone(),
                    alpha.clone() * ratio(opt, 3),
                ));
            }
            if l == r - 1 {
                let denom = int(2) + ratio(1, k);
                v.push(at_least(
                    "min f vs alpha/(2+1/k) * OPT",
                    min_f.clone(),
                    alpha.clone() * int(opt) / denom,
                ));
            }
        }
        ConstraintKind::Intersection { .. } => {}
    }
    Ok(v)
}

/// Strengthened guarantees when many disjoint near-optimal sets exist.
/// `packings` lists `(α, D)` pairs, `D` being the largest number of disjoint
/// nonempty `α`-approximations. For each solution `x` with `|x| > 1`, every
/// pair with `D > ⌊η(r−1)/l⌋` is checked, with `η = |x| − 1` on uniform
/// matroids and `η` the size of `x` after its last improving insertion
/// otherwise.
pub fn verify_packing_guarantee(
    out: &RunOutput,
    uniform: bool,
    l: usize,
    opt: Value,
    packings: &[(BigRational, usize)],
) -> Verdict {
    let mut v = Verdict::default();
    let r = out.multiset.len();
    if l >= r {
        return v;
    }
    for (i, x) in out.multiset.solutions().iter().enumerate() {
        let size = x.len();
        if size <= 1 {
            continue;
        }
        let eta = if uniform {
            size - 1
        } else {
            out.trace.improving_size(i)
        };
        let threshold = eta * (r - 1) / l;
        let fx = int(out.values[i]);
        for (alpha, d) in packings {
            if *d <= threshold {
                continue;
            }
            let want = if uniform {
                alpha.clone() * greedy_factor(size as u64, size as u64) * int(opt)
            } else {
                alpha.clone() * ratio(opt, 2)
            };
            v.push(at_least("solution value vs packing guarantee", fx.clone(), want));
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroids::{PartitionMatroid, UniformMatroid};
    use crate::objectives::ModularObjective;

    fn sol(n: usize, ids: &[usize]) -> Solution {
        Solution::from_elements(n, ids.iter().copied()).unwrap()
    }

    #[test]
    fn modular_example() {
        let f = ModularObjective::new(vec![4, 3, 2, 1]).unwrap();
        let m = UniformMatroid::new(4, 2);
        let out = run_replimit_greedy(&f, &m, RepLimitConfig { r: 2, l: 1 }).unwrap();
        assert_eq!(out.trace.seed, Some(0));
        assert_eq!(out.multiset.solutions(), &[sol(4, &[0, 1]), sol(4, &[0, 2])]);
        assert_eq!(out.ss(), 2);
        assert!(verify_structure(&out, &m, 1).holds());
        assert!(verify_uniform_guarantees(&out, 4, 2, 1, &[0, 4, 7]).holds());
    }

    #[test]
    fn full_limit_reproduces_classical_greedy() {
        let f = ModularObjective::new(vec![2, 7, 1, 5, 3]).unwrap();
        let m = UniformMatroid::new(5, 3);
        let out = run_replimit_greedy(&f, &m, RepLimitConfig { r: 3, l: 3 }).unwrap();
        assert_eq!(out.ss(), 0);
        assert!(out.multiset.solutions().iter().all(|s| *s == sol(5, &[1, 3, 4])));
    }

    #[test]
    fn single_element_ground_set() {
        let f = ModularObjective::new(vec![3]).unwrap();
        let m = UniformMatroid::new(1, 1);
        let out = run_replimit_greedy(&f, &m, RepLimitConfig { r: 2, l: 1 }).unwrap();
        assert_eq!(out.multiset.solutions(), &[sol(1, &[0]), sol(1, &[0])]);
        assert_eq!(out.ss(), 0);
    }

    #[test]
    fn rejects_bad_config() {
        let f = ModularObjective::new(vec![1, 1]).unwrap();
        let m = UniformMatroid::new(2, 1);
        assert!(run_replimit_greedy(&f, &m, RepLimitConfig { r: 1, l: 1 }).is_err());
        assert!(run_replimit_greedy(&f, &m, RepLimitConfig { r: 2, l: 0 }).is_err());
        assert!(run_replimit_greedy(&f, &m, RepLimitConfig { r: 2, l: 3 }).is_err());
        let loops = UniformMatroid::new(2, 0);
        assert!(run_replimit_greedy(&f, &loops, RepLimitConfig { r: 2, l: 1 }).is_err());
    }

    #[test]
    fn running_bound_values() {
        assert_eq!(running_ss_bound(0, 4, 2), 0);
        assert_eq!(running_ss_bound(2, 2, 1), 2);
        assert_eq!(running_ss_bound(5, 4, 2), 2 * 2 * 2 + 3);
        assert_eq!(running_ss_bound(7, 3, 3), 2);
    }

    #[test]
    fn uniform_example_bound() {
        assert_eq!(uniform_iterations(4, 2, 2, 1), 2);
        assert_eq!(running_ss_bound(2, 2, 1), 2);
    }

    #[test]
    fn matroid_formula_example() {
        // r = 4, l = 2, r_M = 3: ss at least 8.
        let f = ModularObjective::new(vec![6, 5, 4, 3, 2, 1]).unwrap();
        let m = UniformMatroid::new(6, 3);
        let out = run_replimit_greedy(&f, &m, RepLimitConfig { r: 4, l: 2 }).unwrap();
        assert!(out.ss() >= 8);
        assert!(verify_matroid_guarantees(&out, 3, 2, 15).holds());
    }

    #[test]
    fn partition_example() {
        let m = PartitionMatroid::from_blocks(4, &[vec![0, 1], vec![2, 3]], &[1, 1]).unwrap();
        let f = ModularObjective::new(vec![4, 3, 2, 1]).unwrap();
        let out = run_replimit_greedy(&f, &m, RepLimitConfig { r: 2, l: 1 }).unwrap();
        assert!(verify_structure(&out, &m, 1).holds());
        // Optimum {0, 2} has value 6.
        assert!(verify_matroid_guarantees(&out, 2, 1, 6).holds());
    }

    #[test]
    fn disjoint_inputs_validated() {
        let f = ModularObjective::new(vec![1, 1, 1]).unwrap();
        let m = UniformMatroid::new(3, 1);
        let out = run_replimit_greedy(&f, &m, RepLimitConfig { r: 2, l: 1 }).unwrap();
        let overlapping = [sol(3, &[0]), sol(3, &[0])];
        let kind = ConstraintKind::Uniform { cap: 1 };
        assert!(verify_disjoint_corollaries(&out, &overlapping, &f, &m, kind, 1, 1).is_err());
        let good = [sol(3, &[0]), sol(3, &[1]), sol(3, &[2])];
        assert!(verify_disjoint_corollaries(&out, &good, &f, &m, kind, 1, 1)
            .unwrap()
            .holds());
        let infeasible = [sol(3, &[0, 1])];
        assert!(verify_benchmark(&out, &infeasible, &f, &m, kind, 1).is_err());
    }

    #[test]
    fn deterministic() {
        let f = ModularObjective::new(vec![3, 3, 1, 2, 2, 5]).unwrap();
        let m = UniformMatroid::new(6, 3);
        let cfg = RepLimitConfig { r: 4, l: 2 };
        assert_eq!(
            run_replimit_greedy(&f, &m, cfg).unwrap(),
            run_replimit_greedy(&f, &m, cfg).unwrap()
        );
    }
}
