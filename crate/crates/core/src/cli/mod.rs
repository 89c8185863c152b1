//! Textual formats and the command-line driver.

pub mod commands;
pub mod parse;
pub mod samples;
pub mod sexpr;

pub use commands::{run, run_from, Cli, Command, Outcome, EXIT_LIMIT, EXIT_NO, EXIT_USAGE, EXIT_YES};
pub use parse::{
    parse_assignment, parse_equation, parse_formula, parse_hypotheses, parse_proof, parse_term,
    parse_theory,
};
pub use samples::{parse_samples, write_samples};
pub use sexpr::{ParseError, Pos};
