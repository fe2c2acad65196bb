//! Exact arithmetic and numerics for complex cubic units, their orders and
//! class numbers, and the terms of the SL3 trace formula built on them.

pub mod census;
pub mod error;
pub mod exact;
pub mod orders;
pub mod reps;
pub mod trace;

pub use error::{Error, Result};
