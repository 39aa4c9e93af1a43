use std::collections::BTreeSet;

use super::{DualCertificate, Instance, Solution};
use crate::error::{Error, Result};

/// Largest facility count accepted by [`brute_force_opt`].
pub const BRUTE_FORCE_MAX_FACILITIES: usize = 20;

/// Exhaustive bipartite triangle-inequality check:
/// `c[i][j] <= c[i][j'] + c[i'][j'] + c[i'][j] + tol` for all `i, i', j, j'`.
pub fn check_metric(inst: &Instance, tol: f64) -> bool {
    let nf = inst.n_facilities();
    let nc = inst.n_cities();
    for i in 0..nf {
        let row_i = inst.cost_row(i);
        for i2 in 0..nf {
            if i2 == i {
                continue;
            }
            let row_i2 = inst.cost_row(i2);
            // cheapest detour i -> j' -> i2 for this facility pair
            let bridge = (0..nc)
                .map(|j2| row_i[j2] + row_i2[j2])
                .fold(f64::INFINITY, f64::min);
            for j in 0..nc {
                if row_i[j] > bridge + row_i2[j] + tol {
                    return false;
                }
            }
        }
    }
    true
}

/// Per-facility slack `f_i - sum_j d_j * max(alpha_j / gamma - c_ij, 0)`.
///
/// The shrunk certificate is dual feasible iff every entry is `>= -tol`.
pub fn check_overtight(inst: &Instance, cert: &DualCertificate) -> Result<Vec<f64>> {
    if !(cert.gamma > 0.0) {
        return Err(Error::Parameter(format!("gamma must be positive, got {}", cert.gamma)));
    }
    if cert.alpha.len() != inst.n_cities() {
        return Err(Error::Structural(format!(
            "certificate has {} entries for {} cities",
            cert.alpha.len(),
            inst.n_cities()
        )));
    }
    let slack = (0..inst.n_facilities())
        .map(|i| {
            let paid: f64 = inst
                .cost_row(i)
                .iter()
                .zip(&cert.alpha)
                .enumerate()
                .map(|(j, (&c, &a))| inst.demand(j) * (a / cert.gamma - c).max(0.0))
                .sum();
            inst.opening_cost(i) - paid
        })
        .collect();
    Ok(slack)
}

/// Optimal integral solution by enumerating all facility subsets.
///
/// Cities go to their nearest open facility (lowest index on ties), or pay
/// their penalty when that is strictly cheaper. Among optimal subsets the
/// lexicographically smallest index list wins.
pub fn brute_force_opt(inst: &Instance) -> Result<Solution> {
    let nf = inst.n_facilities();
    let nc = inst.n_cities();
    if nf > BRUTE_FORCE_MAX_FACILITIES {
        return Err(Error::TooLarge(format!(
            "brute force enumerates 2^n_f subsets; n_f = {nf} exceeds {BRUTE_FORCE_MAX_FACILITIES}"
        )));
    }
    let penalties: Vec<f64> = match inst.penalties() {
        Some(p) => p.to_vec(),
        None => vec![f64::INFINITY; nc],
    };
    if nf == 0 && nc > 0 && penalties.iter().any(|p| p.is_infinite()) {
        return Err(Error::Parameter("no facilities to serve the cities".into()));
    }

    let tol = inst.tolerance();
    let mut search = Search {
        inst,
        penalties: &penalties,
        levels: vec![vec![f64::INFINITY; nc]; nf + 1],
        chosen: Vec::with_capacity(nf),
        best: None,
        tol,
    };
    search.visit(0, 0.0);
    let (_, open) = search
        .best
        .ok_or_else(|| Error::Parameter("no feasible facility subset".into()))?;

    let open: BTreeSet<usize> = open.into_iter().collect();
    let assign = (0..nc)
        .map(|j| {
            let nearest = open.iter().copied().fold(None::<usize>, |acc, i| match acc {
                Some(b) if inst.cost(b, j) <= inst.cost(i, j) => Some(b),
                _ => Some(i),
            });
            match nearest {
                Some(i) if inst.demand(j) * inst.cost(i, j) <= penalties[j] => vec![i],
                _ => vec![],
            }
        })
        .collect();
    Solution::from_parts(inst, open, assign)
}

struct Search<'a> {
    inst: &'a Instance,
    penalties: &'a [f64],
    /// `levels[k]` holds the cheapest demand-weighted connection per city using the chosen prefix.
    levels: Vec<Vec<f64>>,
    chosen: Vec<usize>,
    best: Option<(f64, Vec<usize>)>,
    tol: f64,
}

impl Search<'_> {
    fn visit(&mut self, depth: usize, opening: f64) {
        let nf = self.inst.n_facilities();
        if depth == nf {
            let service: f64 = self.levels[depth]
                .iter()
                .zip(self.penalties)
                .map(|(&c, &p)| c.min(p))
                .sum();
            if !service.is_finite() {
                return;
            }
            let cost = opening + service;
            let better = match &self.best {
                None => true,
                Some((b, set)) => cost < b - self.tol || (cost <= b + self.tol && self.chosen < *set),
            };
            if better {
                self.best = Some((cost, self.chosen.clone()));
            }
            return;
        }
        // include facility `depth`
        let (lo, hi) = self.levels.split_at_mut(depth + 1);
        let row = self.inst.cost_row(depth);
        for (j, slot) in hi[0].iter_mut().enumerate() {
            *slot = lo[depth][j].min(self.inst.demand(j) * row[j]);
        }
        self.chosen.push(depth);
        self.visit(depth + 1, opening + self.inst.opening_cost(depth));
        self.chosen.pop();
        // exclude it
        let (lo, hi) = self.levels.split_at_mut(depth + 1);
        hi[0].copy_from_slice(&lo[depth]);
        self.visit(depth + 1, opening);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_violation_detected() {
        let inst = Instance::new(vec![0.0, 0.0], vec![vec![1.0, 10.0], vec![1.0, 1.0]]).unwrap();
        assert!(!check_metric(&inst, 1e-9));
        let ok = Instance::new(vec![0.0, 0.0], vec![vec![1.0, 3.0], vec![1.0, 1.0]]).unwrap();
        assert!(check_metric(&ok, 1e-9));
    }

    #[test]
    fn overtight_examples() {
        let inst = Instance::new(vec![3.0, 4.0], vec![vec![1.0, 2.0], vec![0.0, 0.0]]).unwrap();
        let slack = check_overtight(&inst, &DualCertificate::new(vec![0.0, 0.0])).unwrap();
        assert_eq!(slack, vec![3.0, 4.0]);

        let inst = Instance::new(vec![1.0], vec![vec![0.0, 0.0]]).unwrap();
        let cert = DualCertificate::new(vec![1.0, 1.0]).with_gamma(2.0);
        assert_eq!(check_overtight(&inst, &cert).unwrap(), vec![0.0]);

        let bad = DualCertificate::new(vec![1.0, 1.0]).with_gamma(0.0);
        assert!(matches!(check_overtight(&inst, &bad), Err(Error::Parameter(_))));
        assert!(check_overtight(&inst, &DualCertificate::new(vec![1.0])).is_err());
    }

    #[test]
    fn brute_force_single_star() {
        let inst = Instance::new(vec![5.0], vec![vec![3.0]]).unwrap();
        let sol = brute_force_opt(&inst).unwrap();
        assert_eq!(sol.total(), 8.0);
        assert_eq!(sol.assign, vec![vec![0]]);
    }

    #[test]
    fn brute_force_tie_break_is_lexicographic() {
        // two identical facilities
        let inst = Instance::new(vec![1.0, 1.0], vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let sol = brute_force_opt(&inst).unwrap();
        assert_eq!(sol.open, [0].into());
        assert_eq!(sol.total(), 3.0);
    }

    #[test]
    fn brute_force_uses_penalties() {
        let inst = Instance::new(vec![10.0], vec![vec![0.0]])
            .unwrap()
            .with_penalties(vec![3.0])
            .unwrap();
        let sol = brute_force_opt(&inst).unwrap();
        assert!(sol.open.is_empty());
        assert_eq!(sol.total(), 3.0);
    }

    #[test]
    fn brute_force_refuses_large() {
        let inst = Instance::new(vec![1.0; 21], vec![vec![1.0]; 21]).unwrap();
        assert!(matches!(brute_force_opt(&inst), Err(Error::TooLarge(_))));
    }
}
