use std::path::PathBuf;

use clap::{Args, ValueEnum};
use facloc::instances::{generate, to_native, GenKind, GenSpec};

use crate::{flag_err, write_file, CliError};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Grid,
    Gnp,
    Hochbaum,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 100)]
    cities: usize,
    #[arg(long, default_value_t = 20)]
    facilities: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Opening costs are drawn from 0..=COST_MAX.
    #[arg(long, default_value_t = 9999)]
    cost_max: u64,
    /// Grid side length.
    #[arg(long, default_value_t = 10_000)]
    side: u64,
    /// Random graph: number of nodes (default: cities + facilities).
    #[arg(long)]
    nodes: Option<usize>,
    /// Random graph edge probability.
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    /// Random graph maximum edge weight.
    #[arg(long, default_value_t = 100)]
    w_max: u64,
    /// Hochbaum: base of the group sizes and distances.
    #[arg(long, default_value_t = 2)]
    base: u64,
    /// Hochbaum: number of co-located facilities.
    #[arg(long, default_value_t = 3)]
    levels: u32,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

pub fn run(args: &GenArgs) -> Result<(), CliError> {
    let kind = match args.kind {
        Kind::Grid => GenKind::Grid { side: args.side },
        Kind::Gnp => GenKind::Gnp {
            n: args.nodes.unwrap_or(args.cities + args.facilities),
            p: args.p,
            w_max: args.w_max,
        },
        Kind::Hochbaum => GenKind::Hochbaum {
            p: args.base,
            k: args.levels,
        },
    };
    let spec = GenSpec {
        kind,
        n_c: args.cities,
        n_f: args.facilities,
        seed: args.seed,
        cost_max: args.cost_max,
    };
    let inst = generate(&spec).map_err(flag_err("--kind"))?;
    let text = to_native(&inst);
    match &args.out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
