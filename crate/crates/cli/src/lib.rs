//! Statement language, batch runner and cache management for katoforge.

pub mod ast;
pub mod cache;
pub mod error;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod selftest;
pub mod session;
pub mod value;

pub use error::CliError;
pub use session::{run_script, Output, RunOptions, Session};
