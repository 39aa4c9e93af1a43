use std::path::PathBuf;

use clap::Args;
use facloc::bench::{bench_csv, bench_table, run_bench, BenchConfig, Suite, DEFAULT_SIZES};

use crate::{flag_err, write_file, CliError};

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// grid or gnp.
    #[arg(long, default_value = "grid")]
    suite: String,
    /// Comma-separated sizes written as CITIESxFACILITIES, e.g. 50x20,100x20.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<String>,
    #[arg(long, default_value_t = 15)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the CSV here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Add a wall-time column (makes the CSV run-dependent).
    #[arg(long)]
    timing: bool,
}

fn parse_size(s: &str) -> Result<(usize, usize), facloc::Error> {
    let bad = || facloc::Error::Parameter(format!("size {s:?} is not of the form CITIESxFACILITIES"));
    let (c, f) = s.split_once('x').ok_or_else(bad)?;
    let n_c = c.trim().parse().map_err(|_| bad())?;
    let n_f: usize = f.trim().parse().map_err(|_| bad())?;
    if n_f == 0 {
        return Err(facloc::Error::Parameter(format!("size {s:?} has no facilities")));
    }
    Ok((n_c, n_f))
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    let suite: Suite = args.suite.parse().map_err(flag_err("--suite"))?;
    let sizes = if args.sizes.is_empty() {
        DEFAULT_SIZES.to_vec()
    } else {
        args.sizes
            .iter()
            .map(|s| parse_size(s))
            .collect::<Result<_, _>>()
            .map_err(flag_err("--sizes"))?
    };
    let cfg = BenchConfig {
        suite,
        sizes,
        trials: args.trials,
        seed: args.seed,
    };
    let rows = run_bench(&cfg).map_err(flag_err("--trials"))?;
    let csv = bench_csv(&rows, args.timing)?;
    match &args.out {
        Some(path) => {
            write_file(path, &csv)?;
            print!("{}", bench_table(&rows));
        }
        None => {
            print!("{csv}");
            eprint!("{}", bench_table(&rows));
        }
    }
    Ok(())
}
