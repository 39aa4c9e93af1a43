//! Factor-revealing programs.
//!
//! Every program shares the variable layout `a1..ak`, `d1..dk`, `f`, followed
//! by auxiliaries in row-major order: `x_j_l` (1 <= j <= l <= k) for
//! Algorithm 1; `r_j_i` (j < i), `g_i_j` (j < i) and `h_i_j` (i <= j) for
//! Algorithm 2 and the tradeoff program. Ratio objectives are homogenised by
//! fixing the denominator to 1, and every `max(., 0)` term is replaced by an
//! auxiliary bounded below by its affine argument.
//!
//! Rows implied by others are left out: the triangle rows
//! `a_j <= a_l + d_j + d_l` with `j < l` follow from `a_j <= a_l`, and the
//! Algorithm 1 auxiliaries `x_j_l` with `l < j` appear in no sum row.

use rayon::prelude::*;

use super::model::{LpModel, LpSolution, Objective, RowSense};
use super::simplex::{simplex_solve, DEFAULT_MAX_ITERS};
use crate::error::{Error, Result};

/// Largest star size the dense solver is expected to handle in-process.
pub const FRLP_DENSE_MAX_K: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrlpKind {
    /// Algorithm 1: `max sum a / (f + sum d)`.
    Alg1,
    /// Algorithm 2: adds the connection-history variables `r_j_i`.
    Alg2,
    /// `max (sum a - gamma_f f) / sum d` over the Algorithm 2 constraints.
    Tradeoff { gamma_f: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrlpSpec {
    pub kind: FrlpKind,
    pub k: usize,
}

impl FrlpSpec {
    pub fn new(kind: FrlpKind, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("star size k must be at least 1".into()));
        }
        if let FrlpKind::Tradeoff { gamma_f } = kind {
            if !(gamma_f >= 1.0) || !gamma_f.is_finite() {
                return Err(Error::Parameter(format!("gamma_f must be a finite value >= 1, got {gamma_f}")));
            }
        }
        Ok(FrlpSpec { kind, k })
    }

    pub fn alg1(k: usize) -> Result<Self> {
        Self::new(FrlpKind::Alg1, k)
    }

    pub fn alg2(k: usize) -> Result<Self> {
        Self::new(FrlpKind::Alg2, k)
    }

    pub fn tradeoff(gamma_f: f64, k: usize) -> Result<Self> {
        Self::new(FrlpKind::Tradeoff { gamma_f }, k)
    }

    pub fn alpha_var(&self, j: usize) -> usize {
        j
    }

    pub fn dist_var(&self, j: usize) -> usize {
        self.k + j
    }

    pub fn facility_var(&self) -> usize {
        2 * self.k
    }
}

pub fn build_frlp(spec: &FrlpSpec) -> LpModel {
    let k = spec.k;
    let mut m = LpModel::new(Objective::Maximize);
    let a: Vec<usize> = (1..=k).map(|j| m.add_var(format!("a{j}"), 1.0)).collect();
    let d: Vec<usize> = (1..=k).map(|j| m.add_var(format!("d{j}"), 0.0)).collect();
    let f = m.add_var("f", 0.0);

    for j in 0..k.saturating_sub(1) {
        m.add_row(
            format!("mono_{}", j + 1),
            vec![(a[j], 1.0), (a[j + 1], -1.0)],
            RowSense::Le,
            0.0,
        );
    }

    match spec.kind {
        FrlpKind::Alg1 => {
            let mut terms: Vec<(usize, f64)> = d.iter().map(|&v| (v, 1.0)).collect();
            terms.push((f, 1.0));
            m.add_row("norm", terms, RowSense::Le, 1.0);
            for j in 0..k {
                for l in 0..j {
                    m.add_row(
                        format!("tri_{}_{}", j + 1, l + 1),
                        vec![(a[j], 1.0), (a[l], -1.0), (d[j], -1.0), (d[l], -1.0)],
                        RowSense::Le,
                        0.0,
                    );
                }
            }
            let mut x = vec![vec![usize::MAX; k]; k];
            for j in 0..k {
                for l in j..k {
                    x[j][l] = m.add_var(format!("x_{}_{}", j + 1, l + 1), 0.0);
                }
            }
            for j in 0..k {
                for l in j..k {
                    m.add_row(
                        format!("exc_{}_{}", j + 1, l + 1),
                        vec![(a[j], 1.0), (d[l], -1.0), (x[j][l], -1.0)],
                        RowSense::Le,
                        0.0,
                    );
                }
            }
            for j in 0..k {
                let mut terms: Vec<(usize, f64)> = (j..k).map(|l| (x[j][l], 1.0)).collect();
                terms.push((f, -1.0));
                m.add_row(format!("pay_{}", j + 1), terms, RowSense::Le, 0.0);
            }
        }
        FrlpKind::Alg2 | FrlpKind::Tradeoff { .. } => {
            if let FrlpKind::Tradeoff { gamma_f } = spec.kind {
                m.objective[f] = -gamma_f;
                let terms = d.iter().map(|&v| (v, 1.0)).collect();
                m.add_row("norm", terms, RowSense::Eq, 1.0);
            } else {
                let mut terms: Vec<(usize, f64)> = d.iter().map(|&v| (v, 1.0)).collect();
                terms.push((f, 1.0));
                m.add_row("norm", terms, RowSense::Eq, 1.0);
            }
            // r[j][i]: connection cost of city j just before city i first connects (j < i)
            let mut r = vec![vec![usize::MAX; k]; k];
            for j in 0..k {
                for i in j + 1..k {
                    r[j][i] = m.add_var(format!("r_{}_{}", j + 1, i + 1), 0.0);
                }
            }
            let mut g = vec![vec![usize::MAX; k]; k];
            for i in 0..k {
                for j in 0..i {
                    g[i][j] = m.add_var(format!("g_{}_{}", i + 1, j + 1), 0.0);
                }
            }
            let mut h = vec![vec![usize::MAX; k]; k];
            for i in 0..k {
                for j in i..k {
                    h[i][j] = m.add_var(format!("h_{}_{}", i + 1, j + 1), 0.0);
                }
            }
            for j in 0..k {
                for i in j + 1..k.saturating_sub(1) {
                    m.add_row(
                        format!("rmono_{}_{}", j + 1, i + 1),
                        vec![(r[j][i + 1], 1.0), (r[j][i], -1.0)],
                        RowSense::Le,
                        0.0,
                    );
                }
            }
            for i in 0..k {
                for j in 0..i {
                    m.add_row(
                        format!("tri_{}_{}", i + 1, j + 1),
                        vec![(a[i], 1.0), (r[j][i], -1.0), (d[i], -1.0), (d[j], -1.0)],
                        RowSense::Le,
                        0.0,
                    );
                }
            }
            for i in 0..k {
                for j in 0..i {
                    m.add_row(
                        format!("sw_{}_{}", i + 1, j + 1),
                        vec![(r[j][i], 1.0), (d[j], -1.0), (g[i][j], -1.0)],
                        RowSense::Le,
                        0.0,
                    );
                }
            }
            for i in 0..k {
                for j in i..k {
                    m.add_row(
                        format!("exc_{}_{}", i + 1, j + 1),
                        vec![(a[i], 1.0), (d[j], -1.0), (h[i][j], -1.0)],
                        RowSense::Le,
                        0.0,
                    );
                }
            }
            for i in 0..k {
                let mut terms: Vec<(usize, f64)> = (0..i).map(|j| (g[i][j], 1.0)).collect();
                terms.extend((i..k).map(|j| (h[i][j], 1.0)));
                terms.push((f, -1.0));
                m.add_row(format!("pay_{}", i + 1), terms, RowSense::Le, 0.0);
            }
        }
    }
    m
}

/// Builds and solves the program; the solution is checked against every row.
pub fn solve_frlp_model(spec: &FrlpSpec) -> Result<(LpModel, LpSolution)> {
    let model = build_frlp(spec);
    let sol = simplex_solve(&model, DEFAULT_MAX_ITERS)?;
    if !sol.is_optimal() {
        return Err(Error::Solver(sol.status));
    }
    let violation = model.max_violation(&sol.values);
    if violation > 1e-7 {
        return Err(Error::Structural(format!(
            "factor-revealing solution violates a row by {violation:e}"
        )));
    }
    Ok((model, sol))
}

/// Optimal value `z_k` of the program (for the tradeoff kind: `gamma_c` at the given `gamma_f`).
pub fn solve_frlp(spec: &FrlpSpec) -> Result<f64> {
    solve_frlp_model(spec).map(|(_, sol)| sol.objective)
}

/// `max_{i <= k} z_i`, solving the `k` programs in parallel.
pub fn solve_frlp_cumulative(spec: &FrlpSpec) -> Result<f64> {
    let values: Result<Vec<f64>> = (1..=spec.k)
        .into_par_iter()
        .map(|i| solve_frlp(&FrlpSpec { k: i, ..*spec }))
        .collect();
    Ok(values?.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_values_are_one() {
        assert!((solve_frlp(&FrlpSpec::alg1(1).unwrap()).unwrap() - 1.0).abs() < 1e-9);
        assert!((solve_frlp(&FrlpSpec::alg2(1).unwrap()).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn alg1_k2_is_three_halves() {
        assert!((solve_frlp(&FrlpSpec::alg1(2).unwrap()).unwrap() - 1.5).abs() < 1e-9);
    }

    #[test]
    fn tradeoff_gamma_one_matches_two_minus_one_over_k() {
        for k in [2, 3, 4] {
            let z = solve_frlp(&FrlpSpec::tradeoff(1.0, k).unwrap()).unwrap();
            assert!((z - (2.0 - 1.0 / k as f64)).abs() < 1e-9, "k={k}: {z}");
        }
    }

    #[test]
    fn layout_and_dimensions() {
        let spec = FrlpSpec::alg1(3).unwrap();
        let m = build_frlp(&spec);
        assert_eq!(m.names[..7], ["a1", "a2", "a3", "d1", "d2", "d3", "f"]);
        assert_eq!(m.var_index("x_1_3"), Some(spec.facility_var() + 3));
        // 7 + 6 auxiliaries; rows: 2 mono + norm + 3 tri + 6 exc + 3 pay
        assert_eq!(m.num_vars(), 13);
        assert_eq!(m.num_rows(), 15);

        let m = build_frlp(&FrlpSpec::alg2(3).unwrap());
        // 7 + r(3) + g(3) + h(6)
        assert_eq!(m.num_vars(), 19);
        assert!(m.var_index("r_1_3").is_some() && m.var_index("g_3_1").is_some() && m.var_index("h_2_3").is_some());
    }

    #[test]
    fn tradeoff_explicit_solution_is_feasible() {
        // a = (2 - 1/k, 2, ..), d = (1, 0, ..), r_1i = 1, r_ji = 2, f = 2(k-1)
        let k = 6;
        let spec = FrlpSpec::tradeoff(1.0, k).unwrap();
        let m = build_frlp(&spec);
        let mut x = vec![0.0; m.num_vars()];
        for j in 0..k {
            x[spec.alpha_var(j)] = if j == 0 { 2.0 - 1.0 / k as f64 } else { 2.0 };
        }
        x[spec.dist_var(0)] = 1.0;
        x[spec.facility_var()] = 2.0 * (k as f64 - 1.0);
        for (idx, name) in m.names.iter().enumerate() {
            let parts: Vec<usize> = name.split('_').skip(1).map(|p| p.parse().unwrap()).collect();
            match name.split('_').next().unwrap() {
                "r" => x[idx] = if parts[0] == 1 { 1.0 } else { 2.0 },
                "g" => {
                    let (i, j) = (parts[0], parts[1]);
                    let r = x[m.var_index(&format!("r_{j}_{i}")).unwrap()];
                    x[idx] = (r - x[spec.dist_var(j - 1)]).max(0.0);
                }
                "h" => {
                    let (i, j) = (parts[0], parts[1]);
                    x[idx] = (x[spec.alpha_var(i - 1)] - x[spec.dist_var(j - 1)]).max(0.0);
                }
                _ => {}
            }
        }
        assert!(m.max_violation(&x) < 1e-12, "violation {}", m.max_violation(&x));
        assert!((m.objective_value(&x) - (2.0 - 1.0 / k as f64)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FrlpSpec::alg1(0).is_err());
        assert!(FrlpSpec::tradeoff(0.5, 3).is_err());
        assert!(FrlpSpec::tradeoff(f64::NAN, 3).is_err());
    }
}
