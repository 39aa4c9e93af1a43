use super::model::{LpModel, Objective, RowSense};
use super::simplex::{simplex_solve, DEFAULT_MAX_ITERS};
use crate::error::{Error, Result};
use crate::model::Instance;

/// Largest `n_f * n_c` accepted by [`build_fl_relaxation`].
pub const RELAXATION_MAX_PAIRS: usize = 20_000;

/// Classic LP relaxation: `min sum f_i y_i + sum d_j c_ij x_ij` subject to
/// `sum_i x_ij >= 1` for every city and `x_ij <= y_i`.
///
/// Variables are `y_1..y_nf` followed by `x_i_j` in facility-major order.
pub fn build_fl_relaxation(inst: &Instance) -> Result<LpModel> {
    let nf = inst.n_facilities();
    let nc = inst.n_cities();
    if nf * nc > RELAXATION_MAX_PAIRS {
        return Err(Error::TooLarge(format!(
            "relaxation of a {nf} x {nc} instance has {} assignment variables (limit {RELAXATION_MAX_PAIRS}); \
             use a smaller instance or export the model to an external solver",
            nf * nc
        )));
    }
    let mut model = LpModel::new(Objective::Minimize);
    let y: Vec<usize> = (0..nf)
        .map(|i| model.add_var(format!("y_{}", i + 1), inst.opening_cost(i)))
        .collect();
    let x: Vec<usize> = (0..nf * nc)
        .map(|k| {
            let (i, j) = (k / nc, k % nc);
            model.add_var(format!("x_{}_{}", i + 1, j + 1), inst.demand(j) * inst.cost(i, j))
        })
        .collect();
    for j in 0..nc {
        let terms = (0..nf).map(|i| (x[i * nc + j], 1.0)).collect();
        model.add_row(format!("cover_{}", j + 1), terms, RowSense::Ge, 1.0);
    }
    for i in 0..nf {
        for j in 0..nc {
            model.add_row(
                format!("link_{}_{}", i + 1, j + 1),
                vec![(x[i * nc + j], 1.0), (y[i], -1.0)],
                RowSense::Le,
                0.0,
            );
        }
    }
    Ok(model)
}

/// Optimal value of the LP relaxation: a lower bound on the integral optimum.
pub fn lp_bound(inst: &Instance) -> Result<f64> {
    if inst.n_cities() == 0 {
        return Ok(0.0);
    }
    let model = build_fl_relaxation(inst)?;
    let sol = simplex_solve(&model, DEFAULT_MAX_ITERS)?;
    if !sol.is_optimal() {
        return Err(Error::Solver(sol.status));
    }
    Ok(sol.objective)
}
