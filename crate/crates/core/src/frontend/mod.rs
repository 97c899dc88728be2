//! Text problem format, result documents, and the verification harness.

pub mod parse;
pub mod report;
pub mod verify;

pub use parse::{parse_problem, parse_source, ConstraintKind, ProblemSource};
pub use report::{build_document, Format, ResultDocument};
pub use verify::{oracle_verify, VerifyOptions, VerifyReport};
