//! Random instance generators and the property suites run over them.

pub mod gen;
pub mod ops;
pub mod suites;

pub use gen::{Gen, GenParams, Shape};
pub use ops::{Fixture, Outcome, OPERATIONS};
pub use suites::{run_suite, Failure, SuiteReport, SUITES};
