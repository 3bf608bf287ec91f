//! Text formats, command dispatch and the acceptance suite for the `treeamb` binary.

pub mod cli;
pub mod formats;
pub mod suite;

pub use cli::run;
