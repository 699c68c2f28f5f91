//! File formats, JSON reports, fuzzing campaigns and the command-line front
//! end for `popmatch-core`.

pub mod cli;
pub mod format;
pub mod fuzz;
pub mod report;
