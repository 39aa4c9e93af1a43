mod common;

use common::{close, random_iid, random_metric};
use facloc::greedy::{greedy1_restatement, greedy1_star, greedy2, jv, Algorithm};
use facloc::instances::{gen_grid, GenKind, GenSpec};
use facloc::lp::lp_bound;
use facloc::model::{brute_force_opt, check_metric, check_overtight, EventKind, Instance};
use proptest::prelude::*;

/// Replays a greedy2 trace from scratch and checks that no unopened facility
/// is ever offered more than its opening cost, and that every switch lowers
/// the city's connection cost.
fn replay_greedy2(inst: &Instance) {
    let out = greedy2(inst).unwrap();
    let nf = inst.n_facilities();
    let nc = inst.n_cities();
    let tol = 1e-9 * inst.magnitude() * (nc as f64 + 1.0);
    let mut open = vec![false; nf];
    let mut cur: Vec<Option<usize>> = vec![None; nc];
    let mut first_conns = 0;
    let mut opens = 0;
    for ev in out.trace.events() {
        let t = ev.time;
        for i in (0..nf).filter(|&i| !open[i]) {
            let offer: f64 = (0..nc)
                .map(|j| match cur[j] {
                    None => (t - inst.cost(i, j)).max(0.0),
                    Some(k) => (inst.cost(k, j) - inst.cost(i, j)).max(0.0),
                })
                .sum();
            assert!(offer <= inst.opening_cost(i) + tol, "facility {i} offered {offer} at {t}");
        }
        match ev.kind {
            EventKind::FacilityOpened { facility } => {
                open[facility] = true;
                opens += 1;
            }
            EventKind::CityConnected { city, facility } => {
                assert!(open[facility]);
                match cur[city] {
                    None => first_conns += 1,
                    Some(k) => assert!(inst.cost(facility, city) < inst.cost(k, city), "non-improving switch"),
                }
                cur[city] = Some(facility);
            }
            EventKind::CityFrozen { .. } => panic!("no penalties in a base run"),
        }
    }
    assert!(opens + first_conns <= nf + nc);
    assert_eq!(first_conns, nc);
    assert!(out.trace.is_time_ordered());
    let final_assign: Vec<Vec<usize>> = cur.iter().map(|c| vec![c.unwrap()]).collect();
    assert_eq!(out.solution.assign, final_assign);
}

#[test]
fn greedy2_trace_replay() {
    for seed in 0..40 {
        replay_greedy2(&random_metric(seed, 5, 9));
        replay_greedy2(&random_iid(seed, 4, 7));
    }
}

#[test]
fn star_and_restatement_agree_on_continuous_costs() {
    for seed in 0..60 {
        let inst = random_iid(1000 + seed, 5, 8);
        let a = greedy1_star(&inst).unwrap();
        let b = greedy1_restatement(&inst).unwrap();
        assert_eq!(a.solution.open, b.solution.open, "seed {seed}");
        assert_eq!(a.solution.assign, b.solution.assign, "seed {seed}");
        assert!(close(a.solution.total(), b.solution.total(), 1e-9));
    }
}

#[test]
fn duals_pay_for_greedy_solutions_with_shrunk_feasibility() {
    for seed in 0..50 {
        let inst = random_metric(seed, 6, 12);
        for (alg, gamma) in [(Algorithm::Greedy1, 1.861), (Algorithm::Greedy1Star, 1.861), (Algorithm::Greedy2, 1.61)] {
            let out = alg.run(&inst).unwrap();
            assert!(close(out.cert.total(&inst), out.solution.total(), 1e-9), "{alg} seed {seed}");
            let cert = out.cert.clone().with_gamma(gamma);
            let slack = check_overtight(&inst, &cert).unwrap();
            assert!(slack.iter().all(|&s| s >= -1e-6), "{alg} seed {seed}: {slack:?}");
        }
    }
}

#[test]
fn jv_dual_is_feasible_and_cost_dominates_opt() {
    for seed in 0..40 {
        let inst = random_metric(200 + seed, 6, 8);
        let out = jv(&inst).unwrap();
        assert!(check_overtight(&inst, &out.cert).unwrap().iter().all(|&s| s >= -1e-6));
        let opt = brute_force_opt(&inst).unwrap().total();
        assert!(out.solution.total() >= opt - 1e-9);
        assert!(out.cert.alpha.iter().sum::<f64>() <= opt + 1e-6);
    }
}

#[test]
fn approximation_against_lp_bound_and_opt_split() {
    for seed in 0..40 {
        let inst = random_metric(300 + seed, 5, 9);
        assert!(check_metric(&inst, 1e-9));
        let lb = lp_bound(&inst).unwrap();
        let opt = brute_force_opt(&inst).unwrap();
        assert!(lb <= opt.total() + 1e-6);
        let g1 = greedy1_restatement(&inst).unwrap().solution.total();
        let g2 = greedy2(&inst).unwrap().solution.total();
        assert!(g1 <= 1.861 * lb + 1e-6);
        assert!(g2 <= 1.61 * lb + 1e-6);
        assert!(g2 <= opt.facility_cost + 2.0 * opt.connection_cost + 1e-6);
    }
}

#[test]
fn identical_rows_give_identical_shares() {
    let inst = Instance::new(vec![6.0, 2.0], vec![vec![1.0, 1.0, 3.0], vec![4.0, 4.0, 0.5]]).unwrap();
    for alg in [Algorithm::Greedy1, Algorithm::Greedy2] {
        let out = alg.run(&inst).unwrap();
        assert_eq!(out.cert.alpha[0], out.cert.alpha[1], "{alg}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_runs_are_consistent(seed in any::<u64>(), nf in 1usize..6, nc in 0usize..9) {
        let inst = random_metric(seed, nf, nc);
        for alg in Algorithm::ALL {
            let out = alg.run(&inst).unwrap();
            prop_assert_eq!(out.solution.assign.len(), nc);
            prop_assert!(out.solution.assign.iter().all(|a| a.len() == 1));
            prop_assert!(out.trace.is_time_ordered());
            if alg != Algorithm::Jv {
                prop_assert!(close(out.cert.total(&inst), out.solution.total(), 1e-9));
            }
        }
    }

    #[test]
    fn greedy2_never_worse_than_twice_opt_on_integer_grids(seed in any::<u64>()) {
        // small integer grid: plenty of exact ties
        let spec = GenSpec { kind: GenKind::Grid { side: 30 }, n_c: 7, n_f: 4, seed, cost_max: 40 };
        let inst = gen_grid(&spec).unwrap();
        let opt = brute_force_opt(&inst).unwrap();
        let g2 = greedy2(&inst).unwrap().solution.total();
        prop_assert!(g2 <= opt.facility_cost + 2.0 * opt.connection_cost + 1e-6);
    }
}
