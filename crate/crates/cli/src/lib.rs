//! Command-line front end: configuration ingestion, subcommand dispatch,
//! CSV tables, and SVG plots.

pub mod config;
pub mod csv;
pub mod error;
pub mod run;
pub mod svg;

pub use config::{parse_axis, parse_config, ChannelChoice, Command, Overrides, RunConfig};
pub use error::{CliError, CliResult};
