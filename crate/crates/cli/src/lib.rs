//! Library half of the `tanlab` binary: argument grammar, command
//! execution, and the PPM/CSV/JSON emitters, kept separate from `main`
//! so integration tests can drive parsing and dispatch in-process.
//!
//! Exit code contract (exhaustive): 0 success, 1 computation finished
//! without a verdict, 2 usage error, 3 I/O error.

pub mod args;
pub mod commands;
pub mod output;
pub mod ppm;

pub use args::{Cli, Command};
pub use commands::{configure_threads, run};
