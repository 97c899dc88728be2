//! Shared fixtures for the benchmarks.

use polymin_core::frontend::parse_problem;
use polymin_core::problem::Problem;

pub const LINE: &str = "vars: x1 x2\nminimize: x1^2 + x2^2\neq: x1 + x2 - 1\n";
pub const CIRCLE: &str = "vars: x1 x2\nminimize: x1\neq: x1^2 + x2^2 - 1\n";
pub const DISK: &str = "vars: x1 x2\nminimize: (x1 - 2)^2 + x2^2\nge: 1 - x1^2 - x2^2\n";

pub fn problem(text: &str) -> Problem {
    parse_problem(text).expect("fixture parses")
}
