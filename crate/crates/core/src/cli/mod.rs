//! Command-line front end: the input document, reports, command dispatch
//! and the scenario gallery.

pub mod commands;
pub mod doc;
pub mod gallery;
pub mod report;

pub use commands::{run, CliError, Command, Options};
pub use doc::{parse_pseudo_mul, parse_spec, OpSpec, SpecDoc, SpecError};
pub use gallery::{gallery, run_gallery};
pub use report::Report;
