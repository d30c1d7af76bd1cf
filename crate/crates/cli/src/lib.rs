//! Library side of the `heavyseg` command: input parsing, query dispatch
//! and report formatting.

pub mod command;
pub mod input;
pub mod output;

pub use command::{run, CliError, Command, Outcome, Query, ThresholdArg};
pub use input::{parse_input, parse_matrix, InputError, InputFormat, ScoringTable};
pub use output::{render, OutputMode, Report};
