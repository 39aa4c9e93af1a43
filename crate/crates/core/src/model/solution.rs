use std::collections::BTreeSet;

use super::Instance;
use crate::error::{Error, Result};

/// An integral solution: open facilities, per-city assignments and the cost split.
///
/// A city normally has exactly one assigned facility. Fault-tolerant solutions
/// carry `r` per city; penalty and robust solutions may leave a city with none.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub open: BTreeSet<usize>,
    pub assign: Vec<Vec<usize>>,
    pub facility_cost: f64,
    pub connection_cost: f64,
    pub penalty_cost: f64,
}

impl Solution {
    /// Builds a solution and fills in the cost breakdown from the instance.
    pub fn from_parts(inst: &Instance, open: BTreeSet<usize>, assign: Vec<Vec<usize>>) -> Result<Self> {
        let mut sol = Solution {
            open,
            assign,
            facility_cost: 0.0,
            connection_cost: 0.0,
            penalty_cost: 0.0,
        };
        let (f, c, p) = breakdown(inst, &sol)?;
        sol.facility_cost = f;
        sol.connection_cost = c;
        sol.penalty_cost = p;
        Ok(sol)
    }

    /// Assigns every city to its nearest facility in `open` (lowest index on ties).
    pub fn nearest(inst: &Instance, open: BTreeSet<usize>) -> Result<Self> {
        if open.is_empty() && inst.n_cities() > 0 {
            return Err(Error::Parameter("cannot assign cities with no open facility".into()));
        }
        let assign = (0..inst.n_cities())
            .map(|j| {
                let mut best = *open.iter().next().unwrap();
                for &i in &open {
                    if inst.cost(i, j) < inst.cost(best, j) {
                        best = i;
                    }
                }
                vec![best]
            })
            .collect();
        Self::from_parts(inst, open, assign)
    }

    pub fn total(&self) -> f64 {
        self.facility_cost + self.connection_cost + self.penalty_cost
    }

    pub fn connected_cities(&self) -> usize {
        self.assign.iter().filter(|a| !a.is_empty()).count()
    }
}

/// (F, C, penalty) recomputed from scratch.
pub(crate) fn breakdown(inst: &Instance, sol: &Solution) -> Result<(f64, f64, f64)> {
    let nf = inst.n_facilities();
    if sol.assign.len() != inst.n_cities() {
        return Err(Error::Structural(format!(
            "solution assigns {} cities, instance has {}",
            sol.assign.len(),
            inst.n_cities()
        )));
    }
    let mut facility = 0.0;
    for &i in &sol.open {
        if i >= nf {
            return Err(Error::Structural(format!("open facility {i} out of range")));
        }
        facility += inst.opening_cost(i);
    }
    let mut connection = 0.0;
    let mut penalty = 0.0;
    for (j, list) in sol.assign.iter().enumerate() {
        if list.is_empty() {
            if let Some(p) = inst.penalties() {
                penalty += p[j];
            }
        }
        for &i in list {
            if i >= nf {
                return Err(Error::Structural(format!("city {j} assigned to facility {i} out of range")));
            }
            if !sol.open.contains(&i) {
                return Err(Error::Structural(format!("city {j} assigned to closed facility {i}")));
            }
            connection += inst.demand(j) * inst.cost(i, j);
        }
    }
    Ok((facility, connection, penalty))
}

/// Total cost F + C + penalties of `sol`, recomputed from the instance.
pub fn total_cost(inst: &Instance, sol: &Solution) -> Result<f64> {
    let (f, c, p) = breakdown(inst, sol)?;
    Ok(f + c + p)
}
