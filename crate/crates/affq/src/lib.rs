//! Command-line front end for `affq-core`: the Hall-polynomial cache, ADHM
//! datum files and the `affq` subcommands.

pub mod adhm_io;
pub mod cache;
pub mod cli;
