//! Problem variants layered over the dual-ascent engine and the base solvers.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::greedy::engine::{self, Mode, Options};
use crate::greedy::{greedy2, output_from_run, Algorithm, SolverOutput};
use crate::model::{Instance, Solution};

/// Iterations of the surcharge bisection in [`solve_k_facility`].
pub const K_FACILITY_ITERATIONS: usize = 64;

/// Parameters of the variants, validated against an instance before a run.
#[derive(Debug, Clone, PartialEq)]
pub enum VariantParams {
    Penalties(Vec<f64>),
    Demands(Vec<f64>),
    FaultTolerant(usize),
    Robust(usize),
    KFacility(usize),
    SoftCapacity(Vec<u64>),
}

impl VariantParams {
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        let nf = inst.n_facilities();
        let nc = inst.n_cities();
        match self {
            VariantParams::Penalties(p) => {
                if p.len() != nc {
                    return Err(Error::Structural(format!("{} penalties for {nc} cities", p.len())));
                }
                if p.iter().any(|&x| x.is_nan() || x < 0.0) {
                    return Err(Error::Parameter("penalties must be nonnegative".into()));
                }
            }
            VariantParams::Demands(d) => {
                if d.len() != nc {
                    return Err(Error::Structural(format!("{} demands for {nc} cities", d.len())));
                }
                check_positive_demands(d)?;
            }
            VariantParams::FaultTolerant(r) => {
                if *r == 0 || *r > nf {
                    return Err(Error::Parameter(format!(
                        "connectivity requirement r = {r} must lie in 1..={nf}"
                    )));
                }
            }
            VariantParams::Robust(l) => {
                if *l >= nc {
                    return Err(Error::Parameter(format!(
                        "number of dropped cities l = {l} must be below the number of cities {nc}"
                    )));
                }
            }
            VariantParams::KFacility(k) => {
                if *k == 0 || *k > nf {
                    return Err(Error::Parameter(format!("facility budget k = {k} must lie in 1..={nf}")));
                }
            }
            VariantParams::SoftCapacity(u) => {
                if u.len() != nf {
                    return Err(Error::Structural(format!("{} capacities for {nf} facilities", u.len())));
                }
                if u.iter().any(|&x| x < 1) {
                    return Err(Error::Parameter("capacities must be at least 1".into()));
                }
            }
        }
        Ok(())
    }
}

fn check_positive_demands(d: &[f64]) -> Result<()> {
    match d.iter().position(|&x| !(x > 0.0) || !x.is_finite()) {
        Some(j) => Err(Error::Parameter(format!("demand of city {j} must be positive, got {}", d[j]))),
        None => Ok(()),
    }
}

fn dual_mode(alg: Algorithm) -> Result<Mode> {
    match alg {
        Algorithm::Greedy1 => Ok(Mode::Withdraw),
        Algorithm::Greedy2 => Ok(Mode::Switch),
        other => Err(Error::Parameter(format!(
            "variant requires greedy1 or greedy2, not {other}"
        ))),
    }
}

/// Runs `alg` with each city's dual growing at rate `d_j`. Unit (or absent)
/// demands give exactly the base run.
pub fn solve_with_demands(inst: &Instance, alg: Algorithm) -> Result<SolverOutput> {
    if let Some(d) = inst.demands() {
        check_positive_demands(d)?;
    }
    let run = engine::run(inst, &Options::new(dual_mode(alg)?))?;
    output_from_run(inst, run)
}

/// Runs `alg` with each dual capped at the city's penalty. Capped cities keep
/// offering what the cap leaves after the connection cost, and connect if such
/// a facility opens; the rest pay their penalty.
pub fn solve_with_penalties(inst: &Instance, alg: Algorithm) -> Result<SolverOutput> {
    if !inst.has_unit_demands() {
        return Err(Error::Parameter("penalties are supported with unit demands only".into()));
    }
    let mut opts = Options::new(dual_mode(alg)?);
    opts.penalties = true;
    let run = engine::run(inst, &opts)?;
    output_from_run(inst, run)
}

/// Every city is connected to `r` distinct open facilities. A city keeps
/// raising its dual until its `r`-th connection; its reported dual is the sum
/// of its connection times, so the duals add up to the total cost.
pub fn solve_fault_tolerant_uniform(inst: &Instance, r: usize) -> Result<SolverOutput> {
    VariantParams::FaultTolerant(r).validate(inst)?;
    let inst = inst.clone().without_penalties();
    let mut opts = Options::new(Mode::Withdraw);
    opts.requirement = r;
    let run = engine::run(&inst, &opts)?;
    output_from_run(&inst, run)
}

/// Serves all but at most `l` cities. For each guess `g` of the most expensive
/// open facility, facilities costlier than `g` are removed, `g` is opened at
/// time zero, and the Algorithm 1 ascent stops as soon as `n_c - l` cities are
/// connected. The cheapest guess wins (lowest index on ties). Penalties are
/// ignored and dropped cities cost nothing.
pub fn solve_robust(inst: &Instance, l: usize) -> Result<Solution> {
    VariantParams::Robust(l).validate(inst)?;
    let inst = inst.clone().without_penalties();
    let nf = inst.n_facilities();
    let target = inst.n_cities() - l;
    let runs: Vec<Result<Solution>> = (0..nf)
        .into_par_iter()
        .map(|g| {
            let fg = inst.opening_cost(g);
            let mut opts = Options::new(Mode::Withdraw);
            opts.allowed = Some((0..nf).map(|i| inst.opening_cost(i) <= fg).collect());
            opts.preopened = Some(g);
            opts.target_connected = Some(target);
            let run = engine::run(&inst, &opts)?;
            let open = (0..nf).filter(|&i| run.open[i]).collect();
            Solution::from_parts(&inst, open, run.conns)
        })
        .collect();
    let mut best: Option<Solution> = None;
    for sol in runs {
        let sol = sol?;
        if best.as_ref().is_none_or(|b| sol.total() < b.total()) {
            best = Some(sol);
        }
    }
    best.ok_or_else(|| Error::Parameter("instance has no facilities".into()))
}

/// Algorithm 2 on the instance with doubled opening costs, evaluated on the
/// original costs with each city at its nearest open facility.
pub fn lmp2(inst: &Instance) -> Result<Solution> {
    surcharged_run(inst, 0.0)
}

fn surcharged_run(inst: &Instance, z: f64) -> Result<Solution> {
    let base = inst.clone().without_penalties();
    let scaled = base.map_opening(|_, f| 2.0 * f + z)?;
    let out = greedy2(&scaled)?;
    if base.n_cities() == 0 {
        return Solution::from_parts(&base, BTreeSet::new(), Vec::new());
    }
    Solution::nearest(&base, out.solution.open)
}

fn best_single_facility(inst: &Instance) -> Result<Solution> {
    let nc = inst.n_cities();
    let star = |i: usize| inst.opening_cost(i) + (0..nc).map(|j| inst.demand(j) * inst.cost(i, j)).sum::<f64>();
    let best = (0..inst.n_facilities())
        .min_by(|&a, &b| star(a).total_cmp(&star(b)).then(a.cmp(&b)))
        .ok_or_else(|| Error::Parameter("instance has no facilities".into()))?;
    Solution::from_parts(inst, [best].into(), vec![vec![best]; nc])
}

/// Opens at most `k` facilities.
///
/// For `k = 1` the best single facility is returned exactly. Otherwise, if the
/// plain LMP-2 run already respects the budget it is returned; if not, a
/// uniform surcharge `z` on the doubled opening costs is bisected over
/// `[0, n_c (max c + max f)]` and the cheapest run with at most `k` open
/// facilities is kept. The best single facility is always a candidate, so a
/// solution exists even when the bisection never lands inside the budget.
pub fn solve_k_facility(inst: &Instance, k: usize) -> Result<Solution> {
    VariantParams::KFacility(k).validate(inst)?;
    let inst = inst.clone().without_penalties();
    if inst.n_cities() == 0 {
        return Solution::from_parts(&inst, BTreeSet::new(), Vec::new());
    }
    let single = best_single_facility(&inst)?;
    if k == 1 {
        return Ok(single);
    }
    let first = surcharged_run(&inst, 0.0)?;
    if first.open.len() <= k {
        return Ok(first);
    }
    let max_c = (0..inst.n_facilities())
        .flat_map(|i| inst.cost_row(i).iter().copied())
        .fold(0.0, f64::max);
    let max_f = inst.opening_costs().iter().copied().fold(0.0, f64::max);
    let (mut lo, mut hi) = (0.0, inst.n_cities() as f64 * (max_c + max_f));
    let mut best = single;
    for _ in 0..K_FACILITY_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let sol = surcharged_run(&inst, mid)?;
        if sol.open.len() > k {
            lo = mid;
        } else {
            hi = mid;
            if sol.total() < best.total() {
                best = sol;
            }
        }
    }
    Ok(best)
}

/// A solution in which facility `i` may be opened several times.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftCapSolution {
    /// Number of copies opened per facility.
    pub copies: Vec<u64>,
    pub assign: Vec<usize>,
    pub facility_cost: f64,
    pub connection_cost: f64,
}

impl SoftCapSolution {
    pub fn total(&self) -> f64 {
        self.facility_cost + self.connection_cost
    }
}

/// Soft capacities: each copy of facility `i` serves at most `u_i` demand
/// units. Solved with Algorithm 2 on costs `c_ij + f_i / u_i`; a facility
/// serving `k_i` units is then opened `ceil(k_i / u_i)` times.
pub fn solve_soft_capacitated(inst: &Instance, u: &[u64]) -> Result<SoftCapSolution> {
    VariantParams::SoftCapacity(u.to_vec()).validate(inst)?;
    let inst = inst.clone().without_penalties();
    let modified = inst.map_costs(|i, _, c| c + inst.opening_cost(i) / u[i] as f64)?;
    let out = greedy2(&modified)?;
    let nf = inst.n_facilities();
    let assign: Vec<usize> = out.solution.assign.iter().map(|a| a[0]).collect();
    let mut load = vec![0.0; nf];
    let mut connection_cost = 0.0;
    for (j, &i) in assign.iter().enumerate() {
        load[i] += inst.demand(j);
        connection_cost += inst.demand(j) * inst.cost(i, j);
    }
    let copies: Vec<u64> = (0..nf)
        .map(|i| (load[i] / u[i] as f64 - 1e-9).ceil().max(0.0) as u64)
        .collect();
    let facility_cost = (0..nf).map(|i| copies[i] as f64 * inst.opening_cost(i)).sum();
    Ok(SoftCapSolution {
        copies,
        assign,
        facility_cost,
        connection_cost,
    })
}

/// Cost share of each city: `d_j * alpha_j`. Sums to the total cost of a
/// greedy run.
pub fn cost_shares(inst: &Instance, out: &SolverOutput) -> Vec<f64> {
    out.cert
        .alpha
        .iter()
        .enumerate()
        .map(|(j, &a)| inst.demand(j) * a)
        .collect()
}
