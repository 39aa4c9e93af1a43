//! The base algorithms: Algorithm 1 (star-greedy and its time-based
//! restatement), Algorithm 2 and the JV primal-dual baseline.

pub(crate) mod engine;
mod star;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use star::greedy1_star;

use crate::error::{Error, Result};
use crate::model::{DualCertificate, EventTrace, Instance, Solution};
use engine::{Mode, Options, Run};

/// Result of one solver run. The certificate's `gamma` is 1; callers set it.
#[derive(Debug, Clone)]
pub struct SolverOutput {
    pub solution: Solution,
    pub cert: DualCertificate,
    pub trace: EventTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Greedy1,
    Greedy1Star,
    Greedy2,
    Jv,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Jv, Algorithm::Greedy1, Algorithm::Greedy1Star, Algorithm::Greedy2];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy1 => "greedy1",
            Algorithm::Greedy1Star => "greedy1-star",
            Algorithm::Greedy2 => "greedy2",
            Algorithm::Jv => "jv",
        }
    }

    /// Proven shrink factor making the run's dual feasible.
    pub fn factor(self) -> f64 {
        match self {
            Algorithm::Greedy1 | Algorithm::Greedy1Star => 1.861,
            Algorithm::Greedy2 => 1.61,
            Algorithm::Jv => 1.0,
        }
    }

    pub fn run(self, inst: &Instance) -> Result<SolverOutput> {
        match self {
            Algorithm::Greedy1 => greedy1_restatement(inst),
            Algorithm::Greedy1Star => greedy1_star(inst),
            Algorithm::Greedy2 => greedy2(inst),
            Algorithm::Jv => jv(inst),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown algorithm {s:?}")))
    }
}

pub(crate) fn output_from_run(inst: &Instance, run: Run) -> Result<SolverOutput> {
    let open: BTreeSet<usize> = (0..inst.n_facilities()).filter(|&i| run.open[i]).collect();
    let solution = Solution::from_parts(inst, open, run.conns)?;
    Ok(SolverOutput {
        solution,
        cert: DualCertificate::new(run.alpha),
        trace: run.trace,
    })
}

/// Algorithm 1 as a continuous dual ascent where connected cities withdraw
/// their contributions.
pub fn greedy1_restatement(inst: &Instance) -> Result<SolverOutput> {
    let run = engine::run(inst, &Options::new(Mode::Withdraw))?;
    output_from_run(inst, run)
}

/// Algorithm 2: connected cities keep offering what they would save by
/// switching to a closer facility. Each city's dual freezes at its first
/// connection; later switches only lower its connection cost.
pub fn greedy2(inst: &Instance) -> Result<SolverOutput> {
    let run = engine::run(inst, &Options::new(Mode::Switch))?;
    output_from_run(inst, run)
}

/// The JV primal-dual algorithm.
///
/// Phase 1 raises all duals without withdrawal, opening facilities
/// temporarily. Phase 2 keeps a maximal set of temporarily open facilities no
/// two of which received a positive contribution from a common city, chosen
/// greedily by opening time, and sends each city to its nearest kept facility.
/// The certificate is the phase-1 dual, which is feasible as is.
pub fn jv(inst: &Instance) -> Result<SolverOutput> {
    let run = engine::run(inst, &Options::new(Mode::Jv))?;
    let tol = inst.tolerance();
    let nc = inst.n_cities();
    let mut temp: Vec<usize> = (0..inst.n_facilities()).filter(|&i| run.open[i]).collect();
    temp.sort_by(|&a, &b| run.open_time[a].total_cmp(&run.open_time[b]).then(a.cmp(&b)));

    let contributes = |i: usize, j: usize| run.alpha[j] - inst.cost(i, j) > tol;
    let mut kept: Vec<usize> = Vec::new();
    for &i in &temp {
        let conflict = kept
            .iter()
            .any(|&k| (0..nc).any(|j| contributes(i, j) && contributes(k, j)));
        if !conflict {
            kept.push(i);
        }
    }
    let solution = if nc == 0 {
        Solution::from_parts(inst, kept.into_iter().collect(), Vec::new())?
    } else {
        Solution::nearest(inst, kept.into_iter().collect())?
    };
    Ok(SolverOutput {
        solution,
        cert: DualCertificate::new(run.alpha),
        trace: run.trace,
    })
}
