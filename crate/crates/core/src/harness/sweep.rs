//! Parameter sweeps and their CSV form.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::constraint::{Constraint, ConstraintSpec};
use super::io::{load_graph, GraphFormat};
use crate::bruteforce::{exact_optimum, OracleLimits};
use crate::common_greedy::{run_common_greedy, CommonGreedyConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matroids::CountingOracle;
use crate::objectives::{CountingObjective, Value, VertexCoverage};
use crate::replimit_greedy::{run_replimit_greedy, RepLimitConfig};
use crate::trace::RunOutput;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algo {
    Common,
    RepLimit,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Common => "common",
            Algo::RepLimit => "replimit",
        }
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "common" => Ok(Algo::Common),
            "replimit" => Ok(Algo::RepLimit),
            other => Err(Error::invalid(format!(
                "unknown algorithm {other:?}, expected common or replimit"
            ))),
        }
    }
}

/// Parameter values to run: `b` for the common-element algorithm, `l` for
/// the representation-limit algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamRange {
    /// `b ∈ [0, rank]` or `l ∈ [1, r]`.
    All,
    Values(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSource {
    pub path: PathBuf,
    pub format: GraphFormat,
    pub complement: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    /// Defaults to the file stem.
    pub graph_id: Option<String>,
    pub constraint: ConstraintSpec,
    /// Defaults to the constraint label.
    pub constraint_id: Option<String>,
    pub r: usize,
    pub algos: Vec<Algo>,
    pub params: ParamRange,
    /// Externally known objective value to normalize against.
    pub best_known: Option<Value>,
    /// Record wall time; off by default so output stays byte-identical.
    pub timing: bool,
}

/// One run of one algorithm at one parameter value.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub graph: String,
    pub constraint: String,
    pub algo: Algo,
    pub param: usize,
    pub r: usize,
    pub min_f: Value,
    /// Rounded to six decimals, as written.
    pub mean_f: f64,
    pub ss: u64,
    pub ss_bound: u64,
    pub best_known: Value,
    pub f_calls: u64,
    pub indep_calls: u64,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowFailure {
    pub algo: Algo,
    pub param: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<RowFailure>,
}

/// Largest ground set for which the exact optimum is the best-known value.
pub const EXACT_BEST_KNOWN_MAX: usize = 12;

fn quantize(x: f64) -> f64 {
    format!("{x:.6}").parse().expect("formatted float parses")
}

struct Measured {
    out: RunOutput,
    f_calls: u64,
    indep_calls: u64,
    ms: u64,
}

fn run_one(
    f: &VertexCoverage,
    c: &Constraint,
    algo: Algo,
    param: usize,
    r: usize,
    timing: bool,
) -> Result<Measured> {
    let f = CountingObjective::new(f);
    let start = Instant::now();
    let (out, indep_calls) = match algo {
        Algo::Common => {
            let m = c
                .as_matroid()
                .ok_or_else(|| Error::invalid("the common-element algorithm needs a matroid"))?;
            let counted = CountingOracle::new(m);
            let out = run_common_greedy(&f, &counted, CommonGreedyConfig { b: param, r })?;
            (out, counted.calls())
        }
        Algo::RepLimit => {
            let counted = CountingOracle::new(c);
            let out = run_replimit_greedy(&f, &counted, RepLimitConfig { r, l: param })?;
            (out, counted.calls())
        }
    };
    let ms = if timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(Measured {
        out,
        f_calls: f.calls(),
        indep_calls,
        ms,
    })
}

fn param_values(algo: Algo, params: &ParamRange, c: &Constraint, r: usize) -> Result<Vec<usize>> {
    Ok(match params {
        ParamRange::Values(v) => v.clone(),
        ParamRange::All => match algo {
            Algo::Common => {
                let m = c.as_matroid().ok_or_else(|| {
                    Error::invalid("the common-element algorithm needs a matroid")
                })?;
                (0..=m.rank()).collect()
            }
            Algo::RepLimit => (1..=r).collect(),
        },
    })
}

/// Loads the graph and runs the sweep.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepOutcome> {
    let loaded = load_graph(&cfg.graph.path, cfg.graph.format, cfg.graph.complement)?;
    let id = cfg.graph_id.clone().unwrap_or_else(|| {
        cfg.graph
            .path
            .file_stem()
            .map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned())
    });
    sweep_graph(&loaded.graph, &id, cfg)
}

/// Runs every configured algorithm at every parameter value on a coverage
/// objective over `graph`. Rows come out grouped by algorithm in the order
/// given, then by parameter, whatever order they finish in.
pub fn sweep_graph(graph: &Graph, graph_id: &str, cfg: &ExperimentConfig) -> Result<SweepOutcome> {
    if cfg.r < 2 {
        return Err(Error::invalid(format!("r must be at least 2, got {}", cfg.r)));
    }
    let constraint = cfg.constraint.build(graph)?;
    let constraint_id = cfg.constraint_id.clone().unwrap_or_else(|| constraint.label());
    let f = VertexCoverage::new(graph);
    let mut jobs = Vec::new();
    for &algo in &cfg.algos {
        for p in param_values(algo, &cfg.params, &constraint, cfg.r)? {
            jobs.push((algo, p));
        }
    }
    let results: Vec<Result<Measured>> = jobs
        .par_iter()
        .map(|&(algo, p)| run_one(&f, &constraint, algo, p, cfg.r, cfg.timing))
        .collect();
    let n = graph.vertex_count();
    let best_known = if n <= EXACT_BEST_KNOWN_MAX {
        exact_optimum(&f, &constraint, OracleLimits::default())?.0
    } else {
        results
            .iter()
            .filter_map(|r| r.as_ref().ok())
            .map(|m| m.out.max_value())
            .chain(cfg.best_known)
            .max()
            .unwrap_or(0)
    };
    let ss_bound = constraint.ss_bound(cfg.r);
    let mut outcome = SweepOutcome::default();
    for (&(algo, param), res) in jobs.iter().zip(results) {
        match res {
            Ok(m) => outcome.rows.push(SweepRow {
                graph: graph_id.to_string(),
                constraint: constraint_id.clone(),
                algo,
                param,
                r: cfg.r,
                min_f: m.out.min_value(),
                mean_f: quantize(m.out.mean_value()),
                ss: m.out.ss(),
                ss_bound,
                best_known,
                f_calls: m.f_calls,
                indep_calls: m.indep_calls,
                ms: m.ms,
            }),
            Err(e) => {
                log::warn!("{} at {param}: {e}", algo.as_str());
                outcome.failures.push(RowFailure {
                    algo,
                    param,
                    message: e.to_string(),
                });
            }
        }
    }
    Ok(outcome)
}

pub const CSV_HEADER: [&str; 13] = [
    "graph",
    "constraint",
    "algo",
    "param",
    "r",
    "min_f",
    "mean_f",
    "ss",
    "ss_bound",
    "best_known",
    "f_calls",
    "indep_calls",
    "ms",
];

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record([
            row.graph.clone(),
            row.constraint.clone(),
            row.algo.as_str().to_string(),
            row.param.to_string(),
            row.r.to_string(),
            row.min_f.to_string(),
            format!("{:.6}", row.mean_f),
            row.ss.to_string(),
            row.ss_bound.to_string(),
            row.best_known.to_string(),
            row.f_calls.to_string(),
            row.indep_calls.to_string(),
            row.ms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn field<T: FromStr>(rec: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    let raw = rec.get(i).ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing column {}", CSV_HEADER[i]),
    })?;
    raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {} value {raw:?}", CSV_HEADER[i]),
    })
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Parse {
            line: 1,
            msg: "unexpected CSV header".into(),
        });
    }
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let algo_raw: String = field(&rec, 2, line)?;
        rows.push(SweepRow {
            graph: field(&rec, 0, line)?,
            constraint: field(&rec, 1, line)?,
            algo: algo_raw.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad algo value {algo_raw:?}"),
            })?,
            param: field(&rec, 3, line)?,
            r: field(&rec, 4, line)?,
            min_f: field(&rec, 5, line)?,
            mean_f: field(&rec, 6, line)?,
            ss: field(&rec, 7, line)?,
            ss_bound: field(&rec, 8, line)?,
            best_known: field(&rec, 9, line)?,
            f_calls: field(&rec, 10, line)?,
            indep_calls: field(&rec, 11, line)?,
            ms: field(&rec, 12, line)?,
        });
    }
    Ok(rows)
}

/// Parameter of each row scaled to `[0, 1]` within its
/// (graph, constraint, algorithm, r) series; a single-value series maps to 0.
pub fn normalized_params(rows: &[SweepRow]) -> Vec<f64> {
    rows.iter()
        .map(|row| {
            let series = rows.iter().filter(|o| {
                o.graph == row.graph && o.constraint == row.constraint && o.algo == row.algo && o.r == row.r
            });
            let (lo, hi) = series.fold((usize::MAX, 0), |(lo, hi), o| (lo.min(o.param), hi.max(o.param)));
            if hi > lo {
                (row.param - lo) as f64 / (hi - lo) as f64
            } else {
                0.0
            }
        })
        .collect()
}

/// Pairs every common-element row with the representation-limit row of the
/// same graph, constraint and `r` whose normalized parameter is closest
/// (smaller parameter on ties). Returns index pairs into `rows`.
pub fn matched_settings(rows: &[SweepRow]) -> Vec<(usize, usize)> {
    let t = normalized_params(rows);
    let mut pairs = Vec::new();
    for (i, a) in rows.iter().enumerate().filter(|(_, a)| a.algo == Algo::Common) {
        let best = rows
            .iter()
            .enumerate()
            .filter(|(_, b)| {
                b.algo == Algo::RepLimit && b.graph == a.graph && b.constraint == a.constraint && b.r == a.r
            })
            .min_by(|(j, b), (k, c)| {
                let dj = (t[*j] - t[i]).abs();
                let dk = (t[*k] - t[i]).abs();
                dj.total_cmp(&dk).then(b.param.cmp(&c.param))
            });
        if let Some((j, _)) = best {
            pairs.push((i, j));
        }
    }
    pairs
}
