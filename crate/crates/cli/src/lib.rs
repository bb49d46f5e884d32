//! Library half of the `siglat` binary: instance-file parsing, query
//! execution, rendering, and emission, kept callable from tests.

pub mod commands;
pub mod emit;
pub mod instance;
pub mod queries;
pub mod render;
