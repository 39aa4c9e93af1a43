//! Domain types shared by every solver: instances, solutions, dual
//! certificates and event traces, plus the metric/overtightness checks and the
//! exhaustive optimum used as a test oracle.

mod certificate;
mod checks;
mod instance;
mod solution;
mod trace;

pub use certificate::DualCertificate;
pub use checks::{brute_force_opt, check_metric, check_overtight, BRUTE_FORCE_MAX_FACILITIES};
pub use instance::Instance;
pub use solution::{total_cost, Solution};
pub use trace::{Event, EventKind, EventTrace, FreezeReason};
