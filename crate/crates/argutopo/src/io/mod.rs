//! Serialization helpers shared by the pipeline and the command line tool.

pub mod csv;
pub mod json;
