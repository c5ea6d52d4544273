//! JSON formats, a wall clock for the search oracle, and the `amalgam`
//! command-line tool, on top of [`amalgam_core`].

pub mod cli;
pub mod clock;
pub mod json;
