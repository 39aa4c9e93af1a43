//! Dense LP solver and the model builders that feed it: the facility
//! location relaxation, the factor-revealing programs, the tight-instance
//! constructor and LP text export.

mod export;
mod frlp;
mod model;
mod relaxation;
mod simplex;
mod tight;

pub use export::{export_lp_text, import_lp_text};
pub use frlp::{
    build_frlp, solve_frlp, solve_frlp_cumulative, solve_frlp_model, FrlpKind, FrlpSpec, FRLP_DENSE_MAX_K,
};
pub use model::{LpModel, LpSolution, LpStatus, Objective, Row, RowSense};
pub use relaxation::{build_fl_relaxation, lp_bound, RELAXATION_MAX_PAIRS};
pub use simplex::{simplex_solve, DEFAULT_MAX_ITERS};
pub use tight::{tight_instance, TIGHT_PERTURBATION};
