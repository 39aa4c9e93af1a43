use std::path::PathBuf;

use clap::{Args, ValueEnum};
use facloc::model::brute_force_opt;
use facloc::variants::{
    cost_shares, solve_fault_tolerant_uniform, solve_k_facility, solve_robust, solve_soft_capacitated,
    solve_with_penalties,
};
use facloc::{Algorithm, Instance, Solution, SolverOutput};
use serde_json::json;

use crate::{flag_err, read_file, write_file, CliError};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Native,
    Orlib,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("variant").multiple(false))]
pub struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "native")]
    format: Format,
    /// greedy1, greedy1-star, greedy2 or jv.
    #[arg(long, default_value = "greedy2")]
    alg: String,
    /// Let cities pay the penalties stored in the instance instead of connecting.
    #[arg(long, group = "variant")]
    penalties: bool,
    /// Connect every city to R distinct open facilities.
    #[arg(long, value_name = "R", group = "variant")]
    fault: Option<usize>,
    /// Leave up to L cities unserved.
    #[arg(long, value_name = "L", group = "variant")]
    robust: Option<usize>,
    /// Open at most K facilities.
    #[arg(long, value_name = "K", group = "variant")]
    k: Option<usize>,
    /// Soft capacities: one value for all facilities or a comma-separated list.
    #[arg(long = "soft-cap", value_name = "U", value_delimiter = ',', group = "variant")]
    soft_cap: Option<Vec<u64>>,
    /// Print each city's cost share.
    #[arg(long)]
    shares: bool,
    /// Write the dual certificate as JSON.
    #[arg(long, value_name = "PATH")]
    cert: Option<PathBuf>,
    /// Also compute the exact optimum by enumeration and print the ratio.
    #[arg(long, conflicts_with_all = ["fault", "robust", "k", "soft_cap"])]
    opt: bool,
}

fn load(args: &SolveArgs) -> Result<Instance, CliError> {
    let text = read_file(&args.input)?;
    let inst = match args.format {
        Format::Native => facloc::instances::from_native(&text),
        Format::Orlib => facloc::instances::parse_orlib(&text),
    };
    inst.map_err(flag_err("--input"))
}

fn print_breakdown(sol: &Solution) {
    let open: Vec<String> = sol.open.iter().map(|i| i.to_string()).collect();
    println!("open facilities: {} [{}]", sol.open.len(), open.join(", "));
    println!("facility cost: {}", sol.facility_cost);
    println!("connection cost: {}", sol.connection_cost);
    println!("penalty cost: {}", sol.penalty_cost);
    println!("total: {}", sol.total());
}

/// Prints the dual side of a run; for the greedy algorithms the duals must pay
/// exactly for the solution.
fn report_dual(args: &SolveArgs, inst: &Instance, alg: Algorithm, out: &SolverOutput) -> Result<(), CliError> {
    let shares = cost_shares(inst, out);
    let sum: f64 = shares.iter().sum();
    println!("sum alpha: {sum}");
    if alg != Algorithm::Jv {
        let total = out.solution.total();
        if (sum - total).abs() > 1e-6 * total.abs().max(1.0) {
            return Err(CliError::Internal(format!("duals sum to {sum} but the solution costs {total}")));
        }
    }
    if args.shares {
        for (j, s) in shares.iter().enumerate() {
            println!("share {j}: {s}");
        }
    }
    if let Some(path) = &args.cert {
        let cert = json!({
            "algorithm": alg.name(),
            "gamma": alg.factor(),
            "alpha": out.cert.alpha,
            "total": out.solution.total(),
        });
        write_file(path, &format!("{cert:#}\n"))?;
    }
    Ok(())
}

fn no_dual_flags(args: &SolveArgs, flag: &'static str) -> Result<(), CliError> {
    if args.shares || args.cert.is_some() {
        return Err(flag_err(flag)(facloc::Error::Parameter(
            "this variant produces no duals; --shares and --cert are unavailable".into(),
        )));
    }
    Ok(())
}

pub fn run(args: &SolveArgs) -> Result<(), CliError> {
    let alg: Algorithm = args.alg.parse().map_err(flag_err("--alg"))?;
    let inst = load(args)?;
    println!("instance: {} facilities, {} cities", inst.n_facilities(), inst.n_cities());
    println!("algorithm: {alg}");

    let total = if let Some(r) = args.fault {
        let out = solve_fault_tolerant_uniform(&inst, r).map_err(flag_err("--fault"))?;
        print_breakdown(&out.solution);
        report_dual(args, &inst.clone().without_penalties(), Algorithm::Greedy1, &out)?;
        out.solution.total()
    } else if let Some(l) = args.robust {
        no_dual_flags(args, "--robust")?;
        let sol = solve_robust(&inst, l).map_err(flag_err("--robust"))?;
        println!("connected cities: {}", sol.connected_cities());
        print_breakdown(&sol);
        sol.total()
    } else if let Some(k) = args.k {
        no_dual_flags(args, "--k")?;
        let sol = solve_k_facility(&inst, k).map_err(flag_err("--k"))?;
        print_breakdown(&sol);
        sol.total()
    } else if let Some(u) = &args.soft_cap {
        no_dual_flags(args, "--soft-cap")?;
        let u = if u.len() == 1 { vec![u[0]; inst.n_facilities()] } else { u.clone() };
        let sol = solve_soft_capacitated(&inst, &u).map_err(flag_err("--soft-cap"))?;
        let copies: Vec<String> = sol.copies.iter().map(|c| c.to_string()).collect();
        println!("copies: [{}]", copies.join(", "));
        println!("facility cost: {}", sol.facility_cost);
        println!("connection cost: {}", sol.connection_cost);
        println!("total: {}", sol.total());
        sol.total()
    } else if args.penalties {
        let out = solve_with_penalties(&inst, alg).map_err(flag_err("--penalties"))?;
        print_breakdown(&out.solution);
        report_dual(args, &inst, alg, &out)?;
        out.solution.total()
    } else {
        let base = inst.clone().without_penalties();
        let out = alg.run(&base).map_err(flag_err("--alg"))?;
        print_breakdown(&out.solution);
        report_dual(args, &base, alg, &out)?;
        out.solution.total()
    };

    if args.opt {
        let reference = if args.penalties { inst } else { inst.without_penalties() };
        let opt = brute_force_opt(&reference).map_err(flag_err("--opt"))?;
        println!("optimum: {}", opt.total());
        let ratio = if opt.total() > 0.0 { total / opt.total() } else { 1.0 };
        println!("ratio to optimum: {ratio}");
    }
    Ok(())
}
