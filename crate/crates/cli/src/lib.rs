//! Command-line front end for `tricorr-core`: pairwise reports, global
//! measures, figure sweeps and the verification suite.

pub mod args;
pub mod commands;
pub mod output;
pub mod verify;
