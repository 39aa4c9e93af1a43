use super::frlp::{build_frlp, FrlpKind, FrlpSpec};
use super::model::LpSolution;
use crate::error::{Error, Result};
use crate::model::Instance;

/// Relative amount added to the cost of the shared facility so that it
/// becomes affordable strictly after the cities have connected.
pub const TIGHT_PERTURBATION: f64 = 1e-7;

/// Builds the worst-case instance for Algorithm 1 from a feasible solution of
/// its factor-revealing program: `k` cities, `k` free facilities where
/// facility `j` sits at distance `a_j` from city `j`, and one shared facility
/// of cost `f` at distance `d_j` from every city `j`.
///
/// The shared facility's cost is raised by `TIGHT_PERTURBATION * (f + sum d)`.
/// Without it the greedy may open the shared facility at the very moment the
/// last cities would connect, depending on how simultaneous events are
/// ordered.
pub fn tight_instance(spec: &FrlpSpec, solution: &LpSolution) -> Result<Instance> {
    if spec.kind != FrlpKind::Alg1 {
        return Err(Error::Parameter("tight instances are defined for the alg1 program only".into()));
    }
    let model = build_frlp(spec);
    if solution.values.len() != model.num_vars() {
        return Err(Error::Parameter(format!(
            "solution has {} values, the alg1 program with k = {} has {} variables",
            solution.values.len(),
            spec.k,
            model.num_vars()
        )));
    }
    let violation = model.max_violation(&solution.values);
    if !(violation <= 1e-6) {
        return Err(Error::Parameter(format!(
            "solution is infeasible for the alg1 program (violation {violation:e})"
        )));
    }
    let k = spec.k;
    let x = |v: usize| solution.values[v].max(0.0);
    let alpha: Vec<f64> = (0..k).map(|j| x(spec.alpha_var(j))).collect();
    let d: Vec<f64> = (0..k).map(|j| x(spec.dist_var(j))).collect();
    let f = x(spec.facility_var());

    let mut costs = vec![vec![0.0; k]; k + 1];
    for i in 0..k {
        for j in 0..k {
            costs[i][j] = if i == j { alpha[j] } else { d[i] + d[j] + alpha[i] };
        }
    }
    costs[k] = d.clone();
    let mut opening = vec![0.0; k + 1];
    opening[k] = f + TIGHT_PERTURBATION * (f + d.iter().sum::<f64>());
    Ok(Instance::new(opening, costs)?.with_metric_flag(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::frlp::solve_frlp_model;
    use crate::lp::model::LpStatus;
    use crate::model::check_metric;

    #[test]
    fn k1_and_k2_shapes() {
        let spec = FrlpSpec::alg1(2).unwrap();
        let (_, sol) = solve_frlp_model(&spec).unwrap();
        let inst = tight_instance(&spec, &sol).unwrap();
        assert_eq!(inst.n_facilities(), 3);
        assert_eq!(inst.n_cities(), 2);
        assert!(inst.metric_flag());
        assert!(check_metric(&inst, 1e-9));
    }

    #[test]
    fn rejects_infeasible_vectors() {
        let spec = FrlpSpec::alg1(2).unwrap();
        let mut values = vec![0.0; build_frlp(&spec).num_vars()];
        values[0] = 5.0;
        let sol = LpSolution { status: LpStatus::Optimal, objective: 5.0, values };
        assert!(matches!(tight_instance(&spec, &sol), Err(Error::Parameter(_))));
        let short = LpSolution { status: LpStatus::Optimal, objective: 0.0, values: vec![0.0; 3] };
        assert!(tight_instance(&spec, &short).is_err());
        let alg2 = FrlpSpec::alg2(2).unwrap();
        assert!(tight_instance(&alg2, &short).is_err());
    }
}
