//! Library side of the `cubic-census` command line tool.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod parabolic;
