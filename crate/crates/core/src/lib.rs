//! Solvers for metric uncapacitated facility location: two greedy
//! dual-fitting algorithms, the JV primal-dual baseline, problem variants, a
//! dense simplex with the factor-revealing programs, and instance tooling.

pub mod bench;
pub mod error;
pub mod greedy;
pub mod instances;
pub mod lp;
pub mod model;
pub mod variants;

pub use error::{Error, Result};
pub use greedy::{Algorithm, SolverOutput};
pub use model::{DualCertificate, Instance, Solution};
