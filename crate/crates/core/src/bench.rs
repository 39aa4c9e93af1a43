//! Batch experiments: mean ratio of each solver to the LP relaxation bound.
//!
//! Trial `t` of the `s`-th size uses seed `seed + 1000 s + t`. Random-graph
//! instances use `n = n_c + n_f` nodes, edge probability
//! [`GNP_EDGE_PROBABILITY`], weights in `1..=`[`GNP_MAX_WEIGHT`] and opening
//! costs in `0..=`[`GNP_COST_MAX`].

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::greedy::Algorithm;
use crate::instances::{generate, GenSpec};
use crate::lp::{lp_bound, RELAXATION_MAX_PAIRS};

pub const GNP_EDGE_PROBABILITY: f64 = 0.1;
pub const GNP_MAX_WEIGHT: u64 = 100;
pub const GNP_COST_MAX: u64 = 999;

/// Algorithms reported per size, in column order.
pub const BENCH_ALGORITHMS: [Algorithm; 3] = [Algorithm::Jv, Algorithm::Greedy1, Algorithm::Greedy2];

/// Sizes `(n_c, n_f)` run when none are given.
pub const DEFAULT_SIZES: [(usize, usize); 4] = [(50, 20), (100, 20), (100, 30), (50, 30)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Grid,
    Gnp,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Suite::Grid),
            "gnp" => Ok(Suite::Gnp),
            _ => Err(Error::Parameter(format!("unknown suite {s:?} (expected grid or gnp)"))),
        }
    }
}

impl Suite {
    pub fn spec(self, n_c: usize, n_f: usize, seed: u64) -> GenSpec {
        match self {
            Suite::Grid => GenSpec::grid(n_c, n_f, seed),
            Suite::Gnp => GenSpec {
                cost_max: GNP_COST_MAX,
                ..GenSpec::gnp(n_c, n_f, n_c + n_f, GNP_EDGE_PROBABILITY, GNP_MAX_WEIGHT, seed)
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub suite: Suite,
    pub sizes: Vec<(usize, usize)>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n_c: usize,
    pub n_f: usize,
    pub algorithm: Algorithm,
    /// Mean of cost / LP bound; `None` when the LP was too large to solve.
    pub mean_ratio: Option<f64>,
    pub trials: usize,
    pub seed_base: u64,
    /// Summed solver time over all trials, in seconds (LP time excluded).
    pub wall_time: f64,
}

struct Trial {
    bound: Option<f64>,
    costs: [f64; 3],
    times: [f64; 3],
}

fn run_trial(cfg: &BenchConfig, n_c: usize, n_f: usize, seed: u64) -> Result<Trial> {
    let inst = generate(&cfg.suite.spec(n_c, n_f, seed))?;
    let bound = if n_c * n_f <= RELAXATION_MAX_PAIRS {
        Some(lp_bound(&inst)?)
    } else {
        None
    };
    let mut costs = [0.0; 3];
    let mut times = [0.0; 3];
    for (a, alg) in BENCH_ALGORITHMS.iter().enumerate() {
        let start = Instant::now();
        let out = alg.run(&inst)?;
        times[a] = start.elapsed().as_secs_f64();
        costs[a] = out.solution.total();
    }
    Ok(Trial { bound, costs, times })
}

/// Runs every trial (in parallel) and returns rows ordered by size, then algorithm.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.trials == 0 {
        return Err(Error::Parameter("number of trials must be positive".into()));
    }
    let mut rows = Vec::new();
    for (s, &(n_c, n_f)) in cfg.sizes.iter().enumerate() {
        let seed_base = cfg.seed.wrapping_add(1000 * s as u64);
        let trials: Vec<Trial> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(cfg, n_c, n_f, seed_base.wrapping_add(t as u64)))
            .collect::<Result<_>>()?;
        let lp_ok = trials.iter().all(|t| t.bound.is_some());
        for (a, &algorithm) in BENCH_ALGORITHMS.iter().enumerate() {
            let mean_ratio = lp_ok.then(|| {
                let sum: f64 = trials
                    .iter()
                    .map(|t| {
                        let b = t.bound.unwrap();
                        if b > 0.0 { t.costs[a] / b } else { 1.0 }
                    })
                    .sum();
                sum / trials.len() as f64
            });
            rows.push(BenchRow {
                n_c,
                n_f,
                algorithm,
                mean_ratio,
                trials: cfg.trials,
                seed_base,
                wall_time: trials.iter().map(|t| t.times[a]).sum(),
            });
        }
    }
    Ok(rows)
}

/// CSV with a header row. Wall time is only included on request, so the
/// default output is byte-identical across runs with the same seed.
pub fn bench_csv(rows: &[BenchRow], timing: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n_c", "n_f", "algorithm", "mean_ratio", "trials", "seed_base", "note"];
    if timing {
        header.push("wall_time_s");
    }
    let csv_err = |e: csv::Error| Error::Structural(format!("csv output failed: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for r in rows {
        let mut rec = vec![
            r.n_c.to_string(),
            r.n_f.to_string(),
            r.algorithm.name().to_string(),
            r.mean_ratio.map_or(String::new(), |x| format!("{x:.6}")),
            r.trials.to_string(),
            r.seed_base.to_string(),
            if r.mean_ratio.is_some() { String::new() } else { "lp=skipped".into() },
        ];
        if timing {
            rec.push(format!("{:.3}", r.wall_time));
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Structural(format!("csv output failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Structural(e.to_string()))
}

/// One line per size with the algorithms as columns.
pub fn bench_table(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:>5} {:>5}", "n_c", "n_f");
    for alg in BENCH_ALGORITHMS {
        let _ = write!(out, " {:>9}", alg.name());
    }
    out.push('\n');
    for chunk in rows.chunks(BENCH_ALGORITHMS.len()) {
        let _ = write!(out, "{:>5} {:>5}", chunk[0].n_c, chunk[0].n_f);
        for r in chunk {
            match r.mean_ratio {
                Some(x) => {
                    let _ = write!(out, " {x:>9.4}");
                }
                None => {
                    let _ = write!(out, " {:>9}", "skipped");
                }
            }
        }
        out.push('\n');
    }
    out
}
