//! File formats and command-line front end for `mckay-core`.

pub mod cli;
pub mod json;

pub use cli::run;
pub use json::{model_to_json, parse_model, read_model, ParseError};
