//! Command-line front end: the JSON graph document, DOT export and the
//! `crystal` subcommands.

pub mod commands;
pub mod document;
pub mod dot;

pub use commands::{run, Cli, CliError, Status};
pub use document::{DocumentError, GraphDocument, LoadedGraph};
