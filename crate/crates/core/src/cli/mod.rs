//! Command-line front end over JSON algebra documents.

pub mod app;
pub mod document;
pub mod report;

pub use app::{main, run, Cli, Command};
pub use document::{parse, AlgebraDocument, DocError};
