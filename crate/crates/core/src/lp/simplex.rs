//! Two-phase primal simplex on a dense tableau.
//!
//! Pricing is Dantzig's rule; after a run of degenerate pivots the solver
//! falls back to Bland's rule until the objective moves again. Pivot updates
//! only touch the nonzero columns of the pivot row, which keeps the sparse
//! factor-revealing programs cheap even though storage is dense.

use rayon::prelude::*;

use super::model::{LpModel, LpSolution, LpStatus, Objective, RowSense};
use crate::error::{Error, Result};

/// Default iteration budget used by the builders in this crate.
pub const DEFAULT_MAX_ITERS: usize = 2_000_000;

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const DROP_TOL: f64 = 1e-13;
const DEGENERATE_RUN: usize = 64;
const PAR_WORK: usize = 1 << 16;

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    rows: usize,
    width: usize,
    data: Vec<f64>,
    /// Reduced costs, last entry is minus the objective value.
    cost: Vec<f64>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    iterations: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
    IterationLimit,
}

/// Solves `model` to optimality or reports why it could not.
///
/// Malformed models (bad indices, non-finite data) are rejected with
/// [`Error::Structural`]; infeasibility, unboundedness and the iteration limit
/// are reported through [`LpSolution::status`].
pub fn simplex_solve(model: &LpModel, max_iters: usize) -> Result<LpSolution> {
    model.validate().map_err(Error::Structural)?;
    let n = model.num_vars();

    // standard form: shifted variables x' = x - lower, rhs made nonnegative
    let mut rows: Vec<(Vec<(usize, f64)>, RowSense, f64)> = Vec::with_capacity(model.num_rows());
    for row in &model.rows {
        let shift: f64 = row.terms.iter().map(|&(k, a)| a * model.lower[k]).sum();
        rows.push((row.terms.clone(), row.sense, row.rhs - shift));
    }
    for k in 0..n {
        if let Some(u) = model.upper[k] {
            rows.push((vec![(k, 1.0)], RowSense::Le, u - model.lower[k]));
        }
    }
    for (terms, sense, rhs) in rows.iter_mut() {
        if *rhs < 0.0 {
            terms.iter_mut().for_each(|t| t.1 = -t.1);
            *rhs = -*rhs;
            *sense = match *sense {
                RowSense::Le => RowSense::Ge,
                RowSense::Ge => RowSense::Le,
                RowSense::Eq => RowSense::Eq,
            };
        }
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != RowSense::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != RowSense::Le).count();
    let ncols = n + n_slack + n_art;
    let width = ncols + 1;
    let mut kinds = vec![ColKind::Structural; n];
    kinds.extend(std::iter::repeat_n(ColKind::Slack, n_slack));
    kinds.extend(std::iter::repeat_n(ColKind::Artificial, n_art));

    let mut data = vec![0.0; m * width];
    let mut basis = vec![0; m];
    let (mut next_slack, mut next_art) = (n, n + n_slack);
    for (r, (terms, sense, rhs)) in rows.iter().enumerate() {
        let line = &mut data[r * width..(r + 1) * width];
        for &(k, a) in terms {
            line[k] += a;
        }
        line[ncols] = *rhs;
        match sense {
            RowSense::Le => {
                line[next_slack] = 1.0;
                basis[r] = next_slack;
                next_slack += 1;
            }
            RowSense::Ge => {
                line[next_slack] = -1.0;
                next_slack += 1;
                line[next_art] = 1.0;
                basis[r] = next_art;
                next_art += 1;
            }
            RowSense::Eq => {
                line[next_art] = 1.0;
                basis[r] = next_art;
                next_art += 1;
            }
        }
    }

    let mut tab = Tableau {
        rows: m,
        width,
        data,
        cost: vec![0.0; width],
        basis,
        kinds,
        iterations: 0,
    };

    let rhs_scale = rows.iter().map(|r| r.2).fold(1.0_f64, f64::max);
    if n_art > 0 {
        let phase1: Vec<f64> = tab
            .kinds
            .iter()
            .map(|&k| if k == ColKind::Artificial { 1.0 } else { 0.0 })
            .collect();
        tab.price(&phase1);
        match tab.iterate(max_iters, true) {
            Outcome::IterationLimit => return Ok(failed(LpStatus::IterationLimit, n)),
            Outcome::Unbounded => unreachable!("phase 1 objective is bounded below by zero"),
            Outcome::Optimal => {}
        }
        if -tab.cost[ncols] > 1e-7 * rhs_scale {
            return Ok(failed(LpStatus::Infeasible, n));
        }
        tab.evict_artificials();
    }

    let sign = match model.sense {
        Objective::Minimize => 1.0,
        Objective::Maximize => -1.0,
    };
    let mut phase2 = vec![0.0; ncols];
    for k in 0..n {
        phase2[k] = sign * model.objective[k];
    }
    tab.price(&phase2);
    let status = match tab.iterate(max_iters, false) {
        Outcome::Optimal => LpStatus::Optimal,
        Outcome::Unbounded => return Ok(failed(LpStatus::Unbounded, n)),
        Outcome::IterationLimit => LpStatus::IterationLimit,
    };

    let mut values = model.lower.clone();
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            values[b] += tab.data[r * width + ncols].max(0.0);
        }
    }
    Ok(LpSolution {
        status,
        objective: model.objective_value(&values),
        values,
    })
}

fn failed(status: LpStatus, n: usize) -> LpSolution {
    LpSolution {
        status,
        objective: f64::NAN,
        values: vec![f64::NAN; n],
    }
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.width - 1
    }

    /// Sets the cost row to `c - c_B B^-1 A` for the current basis.
    fn price(&mut self, costs: &[f64]) {
        let w = self.width;
        self.cost.iter_mut().for_each(|v| *v = 0.0);
        self.cost[..costs.len()].copy_from_slice(costs);
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb == 0.0 {
                continue;
            }
            let line = &self.data[r * w..(r + 1) * w];
            for (slot, &a) in self.cost.iter_mut().zip(line) {
                *slot -= cb * a;
            }
        }
    }

    fn entering(&self, bland: bool, allow_artificial: bool) -> Option<usize> {
        let candidates = (0..self.width - 1)
            .filter(|&k| allow_artificial || self.kinds[k] != ColKind::Artificial)
            .filter(|&k| self.cost[k] < -COST_TOL);
        if bland {
            return candidates.into_iter().next();
        }
        candidates.min_by(|&a, &b| self.cost[a].total_cmp(&self.cost[b]))
    }

    /// Minimum-ratio row for entering column `q`, or `None` if unbounded.
    fn leaving(&self, q: usize, bland: bool) -> Option<(usize, f64)> {
        let w = self.width;
        let rhs = self.rhs_col();
        let mut best: Option<(usize, f64, f64)> = None;
        for r in 0..self.rows {
            let a = self.data[r * w + q];
            if a <= PIVOT_TOL {
                continue;
            }
            let ratio = self.data[r * w + rhs].max(0.0) / a;
            best = match best {
                None => Some((r, ratio, a)),
                Some((br, bratio, ba)) => {
                    let tie = (ratio - bratio).abs() <= 1e-12 * (1.0 + bratio.abs());
                    let take = if tie {
                        if bland {
                            self.basis[r] < self.basis[br]
                        } else {
                            a > ba
                        }
                    } else {
                        ratio < bratio
                    };
                    if take {
                        Some((r, ratio, a))
                    } else {
                        Some((br, bratio, ba))
                    }
                }
            };
        }
        best.map(|(r, ratio, _)| (r, ratio))
    }

    fn iterate(&mut self, max_iters: usize, allow_artificial: bool) -> Outcome {
        let mut degenerate = 0;
        loop {
            let bland = degenerate >= DEGENERATE_RUN;
            let Some(q) = self.entering(bland, allow_artificial) else {
                return Outcome::Optimal;
            };
            let Some((r, ratio)) = self.leaving(q, bland) else {
                return Outcome::Unbounded;
            };
            if self.iterations >= max_iters {
                return Outcome::IterationLimit;
            }
            self.iterations += 1;
            if ratio <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, q);
        }
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let w = self.width;
        let rhs = self.rhs_col();
        let inv = 1.0 / self.data[r * w + q];
        let pivot_row: Vec<f64> = {
            let line = &mut self.data[r * w..(r + 1) * w];
            for v in line.iter_mut() {
                *v *= inv;
            }
            line[q] = 1.0;
            line.to_vec()
        };
        let nz: Vec<usize> = (0..w).filter(|&k| pivot_row[k] != 0.0).collect();

        let eliminate = |line: &mut [f64]| {
            let a = line[q];
            if a == 0.0 {
                return;
            }
            for &k in &nz {
                let v = line[k] - a * pivot_row[k];
                line[k] = if k != rhs && v.abs() < DROP_TOL { 0.0 } else { v };
            }
            line[q] = 0.0;
        };

        if self.rows * nz.len() >= PAR_WORK {
            self.data
                .par_chunks_mut(w)
                .enumerate()
                .filter(|(i, _)| *i != r)
                .for_each(|(_, line)| eliminate(line));
        } else {
            for (i, line) in self.data.chunks_mut(w).enumerate() {
                if i != r {
                    eliminate(line);
                }
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = q;
    }

    /// Pivots basic artificials (at level zero after phase 1) out of the basis
    /// where a non-artificial column allows it. Rows where none does are redundant.
    fn evict_artificials(&mut self) {
        let w = self.width;
        for r in 0..self.rows {
            if self.kinds[self.basis[r]] != ColKind::Artificial {
                continue;
            }
            let line = &self.data[r * w..(r + 1) * w - 1];
            let best = (0..w - 1)
                .filter(|&k| self.kinds[k] != ColKind::Artificial)
                .max_by(|&a, &b| line[a].abs().total_cmp(&line[b].abs()));
            if let Some(q) = best {
                if line[q].abs() > 1e-7 {
                    self.pivot(r, q);
                }
            }
        }
    }
}
