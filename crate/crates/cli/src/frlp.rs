use std::path::PathBuf;

use clap::{Args, ValueEnum};
use facloc::instances::to_native;
use facloc::lp::{
    build_frlp, export_lp_text, solve_frlp, solve_frlp_cumulative, solve_frlp_model, tight_instance, FrlpKind,
    FrlpSpec, FRLP_DENSE_MAX_K,
};

use crate::{flag_err, write_file, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Alg1,
    Alg2,
    Tradeoff,
}

#[derive(Debug, Args)]
pub struct FrlpArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Number of cities in the star.
    #[arg(long)]
    k: usize,
    /// Weight of the facility cost in the tradeoff program.
    #[arg(long = "gamma-f", default_value_t = 1.0)]
    gamma_f: f64,
    /// Also print the maximum of z_i over i <= k.
    #[arg(long)]
    cumulative: bool,
    /// Write the program in LP text format.
    #[arg(long, value_name = "PATH")]
    export: Option<PathBuf>,
    /// Write the worst-case instance built from the optimal solution (alg1 only).
    #[arg(long, value_name = "PATH")]
    tight: Option<PathBuf>,
    /// Tradeoff only: comma-separated gamma_f values; prints gamma_f,gamma_c as CSV.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    curve: Option<Vec<f64>>,
}

fn spec_for(kind: Kind, gamma_f: f64, k: usize) -> Result<FrlpSpec, facloc::Error> {
    match kind {
        Kind::Alg1 => FrlpSpec::alg1(k),
        Kind::Alg2 => FrlpSpec::alg2(k),
        Kind::Tradeoff => FrlpSpec::tradeoff(gamma_f, k),
    }
}

pub fn run(args: &FrlpArgs) -> Result<(), CliError> {
    let spec = spec_for(args.kind, args.gamma_f, args.k).map_err(flag_err("--k"))?;
    if let Some(path) = &args.export {
        write_file(path, &export_lp_text(&build_frlp(&spec)))?;
    }
    if args.k > FRLP_DENSE_MAX_K {
        if args.export.is_some() {
            println!("k = {} exceeds the in-process limit {FRLP_DENSE_MAX_K}; program exported only", args.k);
            return Ok(());
        }
        return Err(flag_err("--k")(facloc::Error::TooLarge(format!(
            "k = {} exceeds the in-process limit {FRLP_DENSE_MAX_K}; use --export and an external LP solver",
            args.k
        ))));
    }
    if args.tight.is_some() && args.kind != Kind::Alg1 {
        return Err(flag_err("--tight")(facloc::Error::Parameter(
            "tight instances are only defined for --kind alg1".into(),
        )));
    }

    if let Some(list) = &args.curve {
        if args.kind != Kind::Tradeoff {
            return Err(flag_err("--curve")(facloc::Error::Parameter(
                "the curve sweep needs --kind tradeoff".into(),
            )));
        }
        println!("gamma_f,gamma_c");
        for &g in list {
            let z = solve_frlp(&spec_for(Kind::Tradeoff, g, args.k).map_err(flag_err("--curve"))?)?;
            println!("{g},{z:.6}");
        }
        return Ok(());
    }

    let (_, sol) = solve_frlp_model(&spec)?;
    match spec.kind {
        FrlpKind::Tradeoff { gamma_f } => println!("gamma_c(gamma_f = {gamma_f}, k = {}) = {:.6}", args.k, sol.objective),
        _ => println!("z_{} = {:.6}", args.k, sol.objective),
    }
    if args.cumulative {
        println!("max z_i over i <= {} = {:.6}", args.k, solve_frlp_cumulative(&spec)?);
    }
    if let Some(path) = &args.tight {
        let inst = tight_instance(&spec, &sol).map_err(flag_err("--tight"))?;
        write_file(path, &to_native(&inst))?;
    }
    Ok(())
}
