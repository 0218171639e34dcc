//! Library surface of the `spinorlab` CLI: verification suites and report
//! types, exposed for integration tests.

pub mod report;
pub mod suites;

pub use report::{CheckResult, SuiteRunner, VerificationReport};
pub use suites::{run_suite, SuiteParams, SUITES};
