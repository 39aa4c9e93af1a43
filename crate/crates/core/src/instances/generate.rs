//! Seeded generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`; integer draws use `gen_range` and edge coins use
//! `gen_bool`, both of which are platform independent.

use petgraph::algo::{connected_components, dijkstra};
use petgraph::graph::{NodeIndex, UnGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::Instance;

/// Regeneration attempts for a disconnected random graph.
pub const GNP_MAX_RETRIES: u64 = 64;

/// Largest number of cities [`gen_hochbaum`] will build.
pub const HOCHBAUM_MAX_CITIES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    /// Points on the integer grid `[0, side)^2` with Euclidean distances.
    Grid { side: u64 },
    /// Random graph G(n, p) with integer edge weights in `[1, w_max]`; costs are shortest paths.
    Gnp { n: usize, p: f64, w_max: u64 },
    /// Co-located facilities and city groups at growing distances. Ignores `n_c`, `n_f` and the seed.
    Hochbaum { p: u64, k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n_c: usize,
    pub n_f: usize,
    pub seed: u64,
    /// Opening costs are drawn from the integers `0..=cost_max`.
    pub cost_max: u64,
}

impl GenSpec {
    pub fn grid(n_c: usize, n_f: usize, seed: u64) -> Self {
        GenSpec {
            kind: GenKind::Grid { side: 10_000 },
            n_c,
            n_f,
            seed,
            cost_max: 9_999,
        }
    }

    pub fn gnp(n_c: usize, n_f: usize, n: usize, p: f64, w_max: u64, seed: u64) -> Self {
        GenSpec {
            kind: GenKind::Gnp { n, p, w_max },
            n_c,
            n_f,
            seed,
            cost_max: 9_999,
        }
    }

    pub fn hochbaum(p: u64, k: u32) -> Self {
        GenSpec {
            kind: GenKind::Hochbaum { p, k },
            n_c: 0,
            n_f: 0,
            seed: 0,
            cost_max: 0,
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    match spec.kind {
        GenKind::Grid { .. } => gen_grid(spec),
        GenKind::Gnp { .. } => gen_gnp(spec),
        GenKind::Hochbaum { .. } => gen_hochbaum(spec),
    }
}

fn opening_costs(rng: &mut ChaCha8Rng, n_f: usize, cost_max: u64) -> Vec<f64> {
    (0..n_f).map(|_| rng.gen_range(0..=cost_max) as f64).collect()
}

/// Draws facility points, then opening costs, then city points.
pub fn gen_grid(spec: &GenSpec) -> Result<Instance> {
    let GenKind::Grid { side } = spec.kind else {
        return Err(Error::Parameter("gen_grid needs a grid spec".into()));
    };
    if side == 0 {
        return Err(Error::Parameter("grid side must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let point = |rng: &mut ChaCha8Rng| (rng.gen_range(0..side) as f64, rng.gen_range(0..side) as f64);
    let fac: Vec<(f64, f64)> = (0..spec.n_f).map(|_| point(&mut rng)).collect();
    let opening = opening_costs(&mut rng, spec.n_f, spec.cost_max);
    let cities: Vec<(f64, f64)> = (0..spec.n_c).map(|_| point(&mut rng)).collect();
    let costs = fac
        .iter()
        .map(|a| cities.iter().map(|b| (a.0 - b.0).hypot(a.1 - b.1)).collect())
        .collect();
    Ok(Instance::new(opening, costs)?.with_metric_flag(true))
}

/// Node `i < n_f` is facility `i`, node `n_f + j` is city `j`. A disconnected
/// graph is redrawn on the next ChaCha stream, up to [`GNP_MAX_RETRIES`] times.
pub fn gen_gnp(spec: &GenSpec) -> Result<Instance> {
    let GenKind::Gnp { n, p, w_max } = spec.kind else {
        return Err(Error::Parameter("gen_gnp needs a gnp spec".into()));
    };
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Parameter(format!("edge probability {p} must lie in (0, 1]")));
    }
    if w_max == 0 {
        return Err(Error::Parameter("maximum edge weight must be at least 1".into()));
    }
    if spec.n_f + spec.n_c > n {
        return Err(Error::Parameter(format!(
            "{} facilities and {} cities do not fit in {n} nodes",
            spec.n_f, spec.n_c
        )));
    }
    for salt in 0..GNP_MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(salt);
        let mut g: UnGraph<(), u64> = UnGraph::with_capacity(n, 0);
        let nodes: Vec<NodeIndex> = (0..n).map(|_| g.add_node(())).collect();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    let w = rng.gen_range(1..=w_max);
                    g.add_edge(nodes[a], nodes[b], w);
                }
            }
        }
        if n > 1 && connected_components(&g) != 1 {
            continue;
        }
        let opening = opening_costs(&mut rng, spec.n_f, spec.cost_max);
        let costs = (0..spec.n_f)
            .map(|i| {
                let dist = dijkstra(&g, nodes[i], None, |e| *e.weight());
                (0..spec.n_c).map(|j| dist[&nodes[spec.n_f + j]] as f64).collect()
            })
            .collect();
        return Ok(Instance::new(opening, costs)?.with_metric_flag(true));
    }
    Err(Error::Generation(format!(
        "no connected graph after {GNP_MAX_RETRIES} attempts; increase p"
    )))
}

/// `k` facilities of cost `p^k` at one point; for `i = 1..k-1` a group of
/// `p^(k-i+1)` cities at distance `1 + p + ... + p^(i-1)`.
pub fn gen_hochbaum(spec: &GenSpec) -> Result<Instance> {
    let GenKind::Hochbaum { p, k } = spec.kind else {
        return Err(Error::Parameter("gen_hochbaum needs a hochbaum spec".into()));
    };
    if p < 2 || k < 2 {
        return Err(Error::Parameter("hochbaum instances need p >= 2 and k >= 2".into()));
    }
    let too_large = || Error::TooLarge(format!("hochbaum instance p = {p}, k = {k} exceeds {HOCHBAUM_MAX_CITIES} cities"));
    let mut n_cities: u64 = 0;
    for i in 1..k {
        let group = p.checked_pow(k - i + 1).ok_or_else(too_large)?;
        n_cities = n_cities.checked_add(group).ok_or_else(too_large)?;
    }
    if n_cities > HOCHBAUM_MAX_CITIES {
        return Err(too_large());
    }
    let mut row = Vec::with_capacity(n_cities as usize);
    let mut dist = 0.0;
    for i in 1..k {
        dist += (p as f64).powi(i as i32 - 1);
        let group = p.pow(k - i + 1);
        row.extend(std::iter::repeat_n(dist, group as usize));
    }
    let fk = (p as f64).powi(k as i32);
    Ok(Instance::new(vec![fk; k as usize], vec![row; k as usize])?.with_metric_flag(true))
}
