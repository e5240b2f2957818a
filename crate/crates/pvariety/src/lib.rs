//! Dataset, file formats, reports and the command-line front end.

pub mod cli;
pub mod dataset;
pub mod formats;
pub mod reports;
