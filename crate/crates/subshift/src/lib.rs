//! Command-line front end and file formats for `subshift-core`.
//!
//! The binary `subshift` exposes the analyses as subcommands; see
//! [`cli::Command`]. Series come out as CSV, structured reports as JSON
//! (schemas ship in `schemas/`).

pub mod cli;
pub mod formats;
pub mod verify;
