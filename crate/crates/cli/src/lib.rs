//! Model files, report pipelines and batch classification for the `paraclass` tool.

pub mod batch;
pub mod error;
pub mod generate;
pub mod modelfile;
pub mod report;

pub use error::{exit, CliError};
pub use modelfile::{
    model_to_json, parse_model, parse_model_str, AnyModel, JsonScalar, ParseError,
};
pub use report::{run_any, run_pipeline, Report, Sections};
