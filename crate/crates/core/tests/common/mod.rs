#![allow(dead_code)]

use facloc::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random points in the plane with real-valued opening costs; metric, and
/// ties occur with probability zero.
pub fn random_metric(seed: u64, nf: usize, nc: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pt = || (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0));
    let fac: Vec<(f64, f64)> = (0..nf).map(|_| pt()).collect();
    let cities: Vec<(f64, f64)> = (0..nc).map(|_| pt()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let f = (0..nf).map(|_| rng.gen_range(0.0..120.0)).collect();
    let c = fac
        .iter()
        .map(|a: &(f64, f64)| cities.iter().map(|b| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()).collect())
        .collect();
    Instance::new(f, c).unwrap().with_metric_flag(true)
}

/// Independent i.i.d. costs; generally not metric.
pub fn random_iid(seed: u64, nf: usize, nc: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = (0..nf).map(|_| rng.gen_range(0.0..50.0)).collect();
    let c = (0..nf).map(|_| (0..nc).map(|_| rng.gen_range(0.0..30.0)).collect()).collect();
    Instance::new(f, c).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Copies city `j` `copies[j]` times, keeping copies adjacent.
pub fn replicate(inst: &Instance, copies: &[usize]) -> Instance {
    let nf = inst.n_facilities();
    let c = (0..nf)
        .map(|i| {
            (0..inst.n_cities())
                .flat_map(|j| std::iter::repeat_n(inst.cost(i, j), copies[j]))
                .collect()
        })
        .collect();
    Instance::new(inst.opening_costs().to_vec(), c).unwrap()
}

fn subsets(nf: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << nf).map(move |mask| (0..nf).filter(|&i| mask >> i & 1 == 1).collect())
}

fn nearest(inst: &Instance, set: &[usize], j: usize) -> f64 {
    set.iter().map(|&i| inst.cost(i, j)).fold(f64::INFINITY, f64::min)
}

/// Cheapest solution opening at most `k` facilities (demand-weighted).
pub fn brute_k(inst: &Instance, k: usize) -> f64 {
    subsets(inst.n_facilities())
        .filter(|s| s.len() <= k)
        .map(|s| {
            let f: f64 = s.iter().map(|&i| inst.opening_cost(i)).sum();
            f + (0..inst.n_cities()).map(|j| inst.demand(j) * nearest(inst, &s, j)).sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Cheapest solution that may leave `l` cities unserved at no cost.
pub fn brute_robust(inst: &Instance, l: usize) -> f64 {
    subsets(inst.n_facilities())
        .map(|s| {
            let f: f64 = s.iter().map(|&i| inst.opening_cost(i)).sum();
            let mut d: Vec<f64> = (0..inst.n_cities()).map(|j| nearest(inst, &s, j)).collect();
            d.sort_by(f64::total_cmp);
            f + d[..inst.n_cities() - l].iter().sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}
