//! Command-line front end and file formats for `solenoid-core`.
//!
//! * [`format`] reads and writes actions as JSON.
//! * [`report`] turns library results into deterministic JSON or text.
//! * [`verify`] holds the self-check suites behind `solenoid verify`.
//! * [`cli`] parses arguments and maps failures to exit codes.

pub mod cli;
pub mod format;
pub mod report;
pub mod verify;

pub use cli::{run, RunConfig};
pub use format::{parse_action, ParseError};
pub use report::Report;
