//! File formats, SVG drawings, reports and the command line front end for
//! [`skeleta_core`].

pub mod cli;
pub mod error;
pub mod format;
pub mod report;
pub mod svg;

pub use error::CliError;
