use std::collections::BTreeSet;

use super::SolverOutput;
use crate::error::{Error, Result};
use crate::model::{DualCertificate, EventKind, EventTrace, Instance, Solution};

/// Algorithm 1 in its direct form: repeatedly pick the most cost-effective star.
///
/// For a facility the best star is always a prefix of the unconnected cities
/// sorted by connection cost, so each round scans `n_f` sorted prefixes. Ties
/// go to the lowest ratio, then the lowest facility index, then the smallest
/// star. Every city of the chosen star is charged the star's ratio as its dual.
pub fn greedy1_star(inst: &Instance) -> Result<SolverOutput> {
    let nf = inst.n_facilities();
    let nc = inst.n_cities();
    if nc > 0 && nf == 0 {
        return Err(Error::Parameter("instance has cities but no facilities".into()));
    }
    let tol = inst.tolerance();
    let order: Vec<Vec<usize>> = (0..nf)
        .map(|i| {
            let row = inst.cost_row(i);
            let mut idx: Vec<usize> = (0..nc).collect();
            idx.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
            idx
        })
        .collect();

    let mut residual_open: Vec<f64> = inst.opening_costs().to_vec();
    let mut opened = vec![false; nf];
    let mut unconnected = vec![true; nc];
    let mut remaining = nc;
    let mut assign = vec![Vec::new(); nc];
    let mut alpha = vec![0.0; nc];
    let mut trace = EventTrace::new();
    let mut last_ratio = 0.0_f64;

    while remaining > 0 {
        // (ratio, facility, star size)
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..nf {
            let row = inst.cost_row(i);
            let (mut weight, mut weighted, mut size) = (0.0, 0.0, 0);
            for &j in &order[i] {
                if !unconnected[j] {
                    continue;
                }
                let d = inst.demand(j);
                weight += d;
                weighted += d * row[j];
                size += 1;
                if weight <= 0.0 {
                    continue;
                }
                let ratio = (residual_open[i] + weighted) / weight;
                let better = match best {
                    None => true,
                    Some((r, _, _)) => ratio < r - tol,
                };
                if better {
                    best = Some((ratio, i, size));
                }
            }
        }
        let (ratio, i, size) =
            best.ok_or_else(|| Error::Parameter("remaining cities have zero demand".into()))?;
        // ratios never decrease once the opened facility's cost is zeroed
        let time = ratio.max(last_ratio);
        last_ratio = time;
        if !opened[i] {
            opened[i] = true;
            trace.push(time, EventKind::FacilityOpened { facility: i });
        }
        residual_open[i] = 0.0;
        let star: Vec<usize> = order[i].iter().copied().filter(|&j| unconnected[j]).take(size).collect();
        for j in star {
            unconnected[j] = false;
            remaining -= 1;
            assign[j].push(i);
            alpha[j] = time;
            trace.push(time, EventKind::CityConnected { city: j, facility: i });
        }
    }

    let open: BTreeSet<usize> = (0..nf).filter(|&i| opened[i]).collect();
    let solution = Solution::from_parts(inst, open, assign)?;
    Ok(SolverOutput {
        solution,
        cert: DualCertificate::new(alpha),
        trace,
    })
}
