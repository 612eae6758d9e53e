//! File formats, reports and the `hda-lab` command line on top of
//! [`hdalab_core`].

pub mod cli;
pub mod expr;
pub mod format;
pub mod report;

pub use hdalab_core as core;
