//! Instance generators, the OR-Library reader and the native text format.

mod generate;
mod native;
mod orlib;

pub use generate::{gen_gnp, gen_grid, gen_hochbaum, generate, GenKind, GenSpec, GNP_MAX_RETRIES, HOCHBAUM_MAX_CITIES};
pub use native::{from_native, to_native, NATIVE_HEADER};
pub use orlib::parse_orlib;
