//! Problem-file front end for the `nahyp` decision procedures.

pub mod error;
pub mod problem;
pub mod run;

pub use error::CliError;
pub use problem::{load_problem, parse_problem, Command, Options, ProblemFile};
pub use run::{render, run};
