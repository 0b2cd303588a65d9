//! The `normline` command-line tool.

pub mod args;
pub mod commands;
pub mod fmt;
pub mod svg;
