//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{brute_k, close, random_iid, random_metric, replicate, rng};
use facloc::bench::{run_bench, BenchConfig, Suite};
use facloc::greedy::{greedy1_restatement, greedy1_star, greedy2, Algorithm};
use facloc::instances::{gen_gnp, gen_grid, GenSpec};
use facloc::lp::{lp_bound, solve_frlp, solve_frlp_cumulative, solve_frlp_model, tight_instance, FrlpSpec};
use facloc::model::{brute_force_opt, check_overtight, Instance};
use facloc::variants::{
    lmp2, solve_fault_tolerant_uniform, solve_k_facility, solve_robust, solve_with_demands, solve_with_penalties,
};
use rand::Rng;
use rayon::prelude::*;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: facloc::Error) -> String {
    e.to_string()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn frlp_alg2_table() -> Check {
    let mut details = Vec::new();
    for (k, want) in [(10, 1.54147), (20, 1.57084)] {
        let (z, took) = timed(|| solve_frlp_cumulative(&FrlpSpec::alg2(k).unwrap()));
        let z = z.map_err(err)?;
        ensure((z - want).abs() <= 1e-3, format!("k={k}: max z_i = {z:.6}, expected {want} +- 1e-3"))?;
        ensure(took <= Duration::from_secs(300), format!("k={k} took {took:?}"))?;
        details.push(format!("k={k}: {z:.5} in {:.2}s", took.as_secs_f64()));
    }
    Ok(details.join(", "))
}

fn frlp_alg1_bounds() -> Check {
    let z2 = solve_frlp(&FrlpSpec::alg1(2).unwrap()).map_err(err)?;
    ensure((z2 - 1.5).abs() <= 1e-6, format!("z_2 = {z2}"))?;
    let values: Vec<(usize, f64)> = (1..=40)
        .into_par_iter()
        .map(|k| solve_frlp(&FrlpSpec::alg1(k).unwrap()).map(|z| (k, z)))
        .collect::<facloc::Result<_>>()
        .map_err(err)?;
    let (kmax, zmax) = values.iter().copied().fold((0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
    ensure(zmax <= 1.861 + 1e-6, format!("z_{kmax} = {zmax} exceeds 1.861"))?;
    Ok(format!("z_2 = {z2:.7}, max over k<=40 is z_{kmax} = {zmax:.5}"))
}

fn tradeoff_at_one() -> Check {
    for k in [2, 5, 10] {
        let z = solve_frlp(&FrlpSpec::tradeoff(1.0, k).unwrap()).map_err(err)?;
        let want = 2.0 - 1.0 / k as f64;
        ensure((z - want).abs() <= 1e-6, format!("k={k}: {z} vs {want}"))?;
    }
    Ok("2 - 1/k at k = 2, 5, 10".into())
}

fn tight_examples() -> Check {
    let mut details = Vec::new();
    for k in [2, 5, 10] {
        let spec = FrlpSpec::alg1(k).unwrap();
        let (_, sol) = solve_frlp_model(&spec).map_err(err)?;
        let inst = tight_instance(&spec, &sol).map_err(err)?;
        let g1 = greedy1_restatement(&inst).map_err(err)?.solution.total();
        let opt = brute_force_opt(&inst).map_err(err)?.total();
        let ratio = g1 / opt;
        ensure(ratio >= sol.objective - 1e-3, format!("k={k}: ratio {ratio} < z_k {}", sol.objective))?;
        details.push(format!("k={k}: {ratio:.5} (z_k {:.5})", sol.objective));
    }
    Ok(details.join(", "))
}

fn invariants_on(s: u64) -> Result<(), String> {
    let nc = 10 + (s as usize * 7) % 51;
    let nf = 3 + (s as usize * 5) % 13;
    let inst = if s % 2 == 0 {
        gen_grid(&GenSpec::grid(nc, nf, s))
    } else {
        gen_gnp(&GenSpec::gnp(nc, nf, nc + nf, 0.15, 50, s))
    }
    .map_err(|e| format!("seed {s}: {e}"))?;
    for (alg, gamma) in [(Algorithm::Greedy1, 1.861), (Algorithm::Greedy2, 1.61)] {
        let out = alg.run(&inst).map_err(|e| format!("seed {s} {alg}: {e}"))?;
        ensure(
            close(out.cert.total(&inst), out.solution.total(), 1e-6),
            format!("seed {s} {alg}: sum alpha != cost"),
        )?;
        let slack = check_overtight(&inst, &out.cert.clone().with_gamma(gamma)).map_err(err)?;
        ensure(
            slack.iter().all(|&x| x >= -1e-6),
            format!("seed {s} {alg}: not feasible at gamma {gamma}"),
        )?;
    }
    Ok(())
}

fn dual_fitting_invariants() -> Check {
    let failures: Vec<String> = (0..200u64)
        .into_par_iter()
        .filter_map(|s| invariants_on(s).err())
        .collect();
    ensure(failures.is_empty(), failures.join("; "))?;
    Ok("200 instances (100 grid, 100 gnp)".into())
}

fn oracles_on(s: u64) -> Result<(), String> {
    let nf = 2 + (s as usize % 7);
    let nc = 3 + (s as usize * 3 % 8);
    let inst = random_metric(10_000 + s, nf, nc);
    let e = |e: facloc::Error| format!("seed {s}: {e}");
    let lb = lp_bound(&inst).map_err(e)?;
    let opt = brute_force_opt(&inst).map_err(e)?;
    let g1 = greedy1_restatement(&inst).map_err(e)?.solution.total();
    let g2 = greedy2(&inst).map_err(e)?.solution.total();
    let lmp = lmp2(&inst).map_err(e)?;
    let tol = 1e-6;
    let checks = [
        (lb <= opt.total() + tol, "lp <= opt"),
        (opt.total() <= g2 + tol, "opt <= greedy2"),
        (g2 <= 1.61 * lb + tol, "greedy2 <= 1.61 lp"),
        (g1 <= 1.861 * lb + tol, "greedy1 <= 1.861 lp"),
        (g2 <= opt.facility_cost + 2.0 * opt.connection_cost + tol, "greedy2 <= F* + 2C*"),
        (lmp.connection_cost <= 2.0 * (opt.total() - lmp.facility_cost) + tol, "LMP-2"),
    ];
    match checks.iter().find(|c| !c.0) {
        Some(c) => Err(format!("seed {s} ({nf}x{nc}): {}", c.1)),
        None => Ok(()),
    }
}

fn oracle_suite() -> Check {
    let failures: Vec<String> = (0..100u64)
        .into_par_iter()
        .filter_map(|s| oracles_on(s).err())
        .collect();
    ensure(failures.is_empty(), failures.join("; "))?;
    Ok("100 tiny instances".into())
}

fn grid_batch() -> Check {
    let cfg = BenchConfig {
        suite: Suite::Grid,
        sizes: vec![(100, 20)],
        trials: 15,
        seed: 2002,
    };
    let (rows, took) = timed(|| run_bench(&cfg));
    let rows = rows.map_err(err)?;
    let ratio = |a: Algorithm| rows.iter().find(|r| r.algorithm == a).and_then(|r| r.mean_ratio).unwrap();
    let (jv, g1, g2) = (ratio(Algorithm::Jv), ratio(Algorithm::Greedy1), ratio(Algorithm::Greedy2));
    ensure(g2 <= 1.02, format!("greedy2 mean ratio {g2}"))?;
    ensure(jv >= g2, format!("jv {jv} < greedy2 {g2}"))?;
    ensure(took <= Duration::from_secs(600), format!("took {took:?}"))?;
    Ok(format!("jv {jv:.4}, greedy1 {g1:.4}, greedy2 {g2:.4} in {:.2}s", took.as_secs_f64()))
}

fn variant_properties() -> Check {
    // demand replication
    for s in 0..50u64 {
        let base = random_iid(20_000 + s, 2 + s as usize % 4, 3 + s as usize % 5);
        let mut r = rng(s);
        let copies: Vec<usize> = (0..base.n_cities()).map(|_| r.gen_range(1..=4)).collect();
        let weighted = base
            .clone()
            .with_demands(copies.iter().map(|&c| c as f64).collect())
            .map_err(err)?;
        let expanded = replicate(&base, &copies);
        for alg in [Algorithm::Greedy1, Algorithm::Greedy2] {
            let a = solve_with_demands(&weighted, alg).map_err(err)?.solution.total();
            let b = alg.run(&expanded).map_err(err)?.solution.total();
            ensure(close(a, b, 1e-6), format!("demands seed {s} {alg}: {a} vs {b}"))?;
        }
    }
    // r = 1 and infinite penalties reproduce the base run exactly
    for s in 0..30u64 {
        let inst = random_metric(30_000 + s, 4, 7);
        let base1 = greedy1_restatement(&inst).map_err(err)?;
        let ft = solve_fault_tolerant_uniform(&inst, 1).map_err(err)?;
        ensure(ft.solution == base1.solution && ft.cert == base1.cert, format!("fault r=1 seed {s}"))?;
        let inf = inst.clone().with_penalties(vec![f64::INFINITY; 7]).map_err(err)?;
        for alg in [Algorithm::Greedy1, Algorithm::Greedy2] {
            let base = alg.run(&inst).map_err(err)?;
            let pen = solve_with_penalties(&inf, alg).map_err(err)?;
            ensure(
                pen.solution == base.solution && pen.cert == base.cert,
                format!("infinite penalties seed {s} {alg}"),
            )?;
        }
        let robust = solve_robust(&inst, 0).map_err(err)?;
        ensure(robust.connected_cities() == 7, format!("robust l=0 seed {s}"))?;
    }
    // k-facility budget and factor 4
    for s in 0..30u64 {
        let inst: Instance = random_metric(40_000 + s, 5, 8);
        let k = 1 + s as usize % 3;
        let sol = solve_k_facility(&inst, k).map_err(err)?;
        ensure(sol.open.len() <= k, format!("k-facility seed {s}: {} open", sol.open.len()))?;
        let opt = brute_k(&inst, k);
        ensure(sol.total() <= 4.0 * opt + 1e-6, format!("k-facility seed {s}: {} vs {opt}", sol.total()))?;
    }
    Ok("demands x50, fault r=1, infinite penalties, robust l=0, k-facility x30".into())
}

fn star_equivalence() -> Check {
    for s in 0..200u64 {
        let nf = 2 + s as usize % 6;
        let nc = 2 + (s as usize * 7) % 11;
        let inst = random_iid(50_000 + s, nf, nc);
        let a = greedy1_star(&inst).map_err(err)?.solution;
        let b = greedy1_restatement(&inst).map_err(err)?.solution;
        ensure(a.open == b.open, format!("seed {s}: open sets differ"))?;
        ensure(close(a.total(), b.total(), 1e-6), format!("seed {s}: {} vs {}", a.total(), b.total()))?;
    }
    Ok("200 continuous-cost instances".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("alg2 factor-revealing values at k = 10, 20", frlp_alg2_table),
        ("alg1 factor-revealing z_2 and bound up to k = 40", frlp_alg1_bounds),
        ("tradeoff program at gamma_f = 1", tradeoff_at_one),
        ("greedy1 on tight instances reaches z_k", tight_examples),
        ("dual fitting on random metric instances", dual_fitting_invariants),
        ("oracle suite on tiny instances", oracle_suite),
        ("grid 100x20 batch against the LP bound", grid_batch),
        ("variant properties", variant_properties),
        ("star greedy equals its time-based form", star_equivalence),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let (result, took) = timed(check);
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} [{:.1}s]", n + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
