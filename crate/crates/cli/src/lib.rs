//! Command-line front end for `cuntz-core`: documents, reports and the
//! command implementations behind the `cuntz` binary.

pub mod commands;
pub mod doc;
pub mod error;
pub mod report;
