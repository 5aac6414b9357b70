//! Library surface of the command-line front end: the CSV formats and the
//! argument-driven entry point, kept in a library so tests and fuzz targets
//! can drive them directly.

pub mod app;
pub mod csv;

pub use app::run;
pub use csv::{parse_matrix_csv, parse_pointset_csv, ParseError, ParseErrorKind};
