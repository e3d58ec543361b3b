mod common;

use diverse_core::bruteforce::{
    disjoint_approx_count, exact_diverse_optimum, exact_optimum, min_closure_bound, OracleLimits,
};
use diverse_core::common_greedy::verify_matroid_ss_bound;
use diverse_core::replimit_greedy::{
    verify_benchmark, verify_disjoint_corollaries, verify_packing_guarantee, ConstraintKind,
};
use diverse_core::{
    feasible_extensions, has_loops, run_common_greedy, run_replimit_greedy, CommonGreedyConfig,
    ExplicitMatroid, IndependenceOracle, IntersectionConstraint, Matroid, RepLimitConfig, Solution,
    UniformMatroid, ValueOracle, VertexCoverage,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

/// A random maximal feasible set avoiding `used`.
fn random_maximal<C: IndependenceOracle + ?Sized, R: Rng>(c: &C, used: &Solution, rng: &mut R) -> Solution {
    let n = c.ground_size();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut x = Solution::empty(n);
    for v in order {
        if !used.contains(v) && c.is_independent(&x.with(v)) {
            x.insert(v);
        }
    }
    x
}

/// Pairwise disjoint nonempty feasible sets drawn greedily.
fn disjoint_family<C: IndependenceOracle + ?Sized, R: Rng>(c: &C, rng: &mut R) -> Vec<Solution> {
    let n = c.ground_size();
    let mut used = Solution::empty(n);
    let mut out = Vec::new();
    loop {
        let x = random_maximal(c, &used, rng);
        if x.is_empty() {
            return out;
        }
        used.union_with(&x);
        out.push(x);
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn benchmark_factors_hold_for_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..150 {
        let n = rng.random_range(2..=10);
        let r = rng.random_range(2..=5);
        let l = rng.random_range(1..r);
        let p = rng.random_range(0.1..0.5);
        let f = VertexCoverage::new(&random_graph(&mut rng, n, p));
        let (c, kind): (Box<dyn IndependenceOracle>, ConstraintKind) = match i % 3 {
            0 => {
                let k = rng.random_range(1..=n);
                (Box::new(UniformMatroid::new(n, k)), ConstraintKind::Uniform { cap: k })
            }
            1 => (random_matroid(&mut rng, n), ConstraintKind::Matroid),
            _ => (
                Box::new(
                    IntersectionConstraint::new(vec![random_matroid(&mut rng, n), random_matroid(&mut rng, n)])
                        .unwrap(),
                ),
                ConstraintKind::Intersection { arity: 2 },
            ),
        };
        let out = run_replimit_greedy(&f, c.as_ref(), RepLimitConfig { r, l }).unwrap();
        for _ in 0..3 {
            let size = rng.random_range(1..=4);
            let y: Vec<Solution> = (0..size)
                .map(|_| random_maximal(c.as_ref(), &Solution::empty(n), &mut rng))
                .collect();
            let v = verify_benchmark(&out, &y, &f, c.as_ref(), kind, l).unwrap();
            assert!(v.holds(), "instance {i}: {v}");
        }
    }
}

#[test]
fn benchmark_rejects_infeasible_sets() {
    let f = VertexCoverage::new(&random_graph(&mut ChaCha8Rng::seed_from_u64(1), 4, 0.5));
    let c = UniformMatroid::new(4, 1);
    let out = run_replimit_greedy(&f, &c, RepLimitConfig { r: 2, l: 1 }).unwrap();
    let y = vec![Solution::full(4)];
    assert!(verify_benchmark(&out, &y, &f, &c, ConstraintKind::Uniform { cap: 1 }, 1).is_err());
}

#[test]
fn disjoint_families_give_their_guarantees() {
    let lim = OracleLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..150 {
        let n = rng.random_range(2..=10);
        let r = rng.random_range(2..=5);
        let l = rng.random_range(1..r);
        let p = rng.random_range(0.1..0.5);
        let f = VertexCoverage::new(&random_graph(&mut rng, n, p));
        let (c, kind): (Box<dyn IndependenceOracle>, ConstraintKind) = if i % 2 == 0 {
            let k = rng.random_range(1..=n);
            (Box::new(UniformMatroid::new(n, k)), ConstraintKind::Uniform { cap: k })
        } else {
            (random_matroid(&mut rng, n), ConstraintKind::Matroid)
        };
        if has_loops(c.as_ref()) && feasible_extensions(c.as_ref(), &Solution::empty(n)).is_empty() {
            continue;
        }
        let opt = exact_optimum(&f, c.as_ref(), lim).unwrap().0;
        let out = run_replimit_greedy(&f, c.as_ref(), RepLimitConfig { r, l }).unwrap();
        let y = disjoint_family(c.as_ref(), &mut rng);
        let v = verify_disjoint_corollaries(&out, &y, &f, c.as_ref(), kind, l, opt).unwrap();
        assert!(v.holds(), "instance {i}: {v}");
    }
}

#[test]
fn packing_counts_bound_every_solution() {
    let lim = OracleLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let alphas = [rational(1, 3), rational(1, 2), rational(3, 4), rational(1, 1)];
    for i in 0..60 {
        let n = rng.random_range(2..=9);
        let r = rng.random_range(2..=5);
        let l = rng.random_range(1..r);
        let p = rng.random_range(0.05..0.4);
        let f = VertexCoverage::new(&random_graph(&mut rng, n, p));
        let uniform = i % 2 == 0;
        let c: Box<dyn IndependenceOracle> = if uniform {
            Box::new(UniformMatroid::new(n, rng.random_range(1..=n)))
        } else {
            random_matroid(&mut rng, n)
        };
        if feasible_extensions(c.as_ref(), &Solution::empty(n)).is_empty() {
            continue;
        }
        let opt = exact_optimum(&f, c.as_ref(), lim).unwrap().0;
        let packings: Vec<(BigRational, usize)> = alphas
            .iter()
            .map(|a| (a.clone(), disjoint_approx_count(&f, c.as_ref(), a, lim).unwrap()))
            .collect();
        let out = run_replimit_greedy(&f, c.as_ref(), RepLimitConfig { r, l }).unwrap();
        let v = verify_packing_guarantee(&out, uniform, l, opt, &packings);
        assert!(v.holds(), "instance {i}: {v}");
    }
}

#[test]
fn diverse_optimum_respects_the_closure_bound() {
    let lim = OracleLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for i in 0..40 {
        let n = rng.random_range(1..=6);
        let m = if i % 2 == 0 {
            random_binary(&mut rng, n)
        } else {
            ExplicitMatroid::materialize(&random_partition(&mut rng, n)).unwrap()
        };
        let f = diverse_core::ModularObjective::new(vec![1; n]).unwrap();
        for r in 1..=3 {
            let zero = rational(0, 1);
            let (ss, _) = exact_diverse_optimum(&f, &m, r, &zero, lim).unwrap();
            let bound = min_closure_bound(&m, r).unwrap();
            assert!(ss <= bound, "matroid {i} r={r}: optimum {ss} exceeds {bound}");
        }
    }
}

#[test]
fn common_element_runs_meet_the_matroid_lower_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    for i in 0..300 {
        let n = rng.random_range(2..=12);
        let r = rng.random_range(2..=6);
        let m = random_matroid(&mut rng, n);
        if has_loops(m.as_ref()) || m.rank() == 0 {
            continue;
        }
        let b = rng.random_range(0..m.rank());
        let p = rng.random_range(0.1..0.5);
        let f = VertexCoverage::new(&random_graph(&mut rng, n, p));
        let out = run_common_greedy(&f, m.as_ref(), CommonGreedyConfig { b, r }).unwrap();
        let v = verify_matroid_ss_bound(&out, m.as_ref(), b, r).unwrap();
        assert!(v.holds(), "instance {i}: {v}");
        assert_eq!(f.value(&out.trace.start), out.trace.start_value);
        checked += 1;
    }
    assert!(checked > 100);
}
