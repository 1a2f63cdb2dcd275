//! Seeded verification suites shared by the CLI `verify` subcommand and the
//! acceptance test target. Each suite covers one verifiable consequence of
//! the variation theory at full scale; every check compares exact rationals
//! unless a tolerance is part of the statement itself.

pub mod oracle;

mod suites;

pub use suites::{run_all, run_suite, Check, SuiteReport, SUITES};
