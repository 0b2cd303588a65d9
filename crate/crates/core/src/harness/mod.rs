//! Instance generation and end-to-end verification of the perimeter bounds.

mod checks;
mod generate;
mod search;
mod suite;

pub use checks::*;
pub use generate::*;
pub use search::{maximize_triangle_excess, ExcessSearch};
pub use suite::{run_suite, square_halves_scenario, SuiteConfig, SuiteOutput, DEFAULT_SEED};
