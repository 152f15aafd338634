//! The `df` command-line tool.

pub mod app;
pub mod report;

pub use app::run;
