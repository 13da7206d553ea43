//! Instance and result formats, a seeded instance generator, a benchmark
//! harness and the `twoflow` command line on top of the solvers.

pub mod bench;
pub mod cli;
pub mod error;
pub mod format;
pub mod generate;

pub use cli::run_cli;
pub use error::{BenchError, FormatError};
pub use format::{load_instance, load_result, save_instance, save_result, ResultDoc};
pub use generate::{generate, Fraction, GenSpec};
