//! Command-line front end for `uso-core`: file formats, reports and subcommands.

pub mod commands;
pub mod formats;
pub mod report;

/// Exit codes: the checked property holds, fails, or the input was rejected.
pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
