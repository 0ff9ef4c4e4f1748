//! CSV front end for the oversampling library: file ingestion and
//! emission, dataset reports, and the command-line interface.

pub mod cli;
pub mod error;
pub mod io;
pub mod report;

pub use cli::run;
pub use error::CliError;
pub use io::{read_csv, write_csv, CsvOptions, LabelSelector};
pub use report::Report;
