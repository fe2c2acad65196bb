//! The global unit sweep: admissible polynomials up to a regulator bound,
//! grouped by field and order, with class-level records and counts.

mod counts;
mod decompose;
mod sweep;

pub use counts::{census_counts, pgt_ratio, Adjudication, CountRow};
pub use decompose::power_decompose;
pub use sweep::{run_sweep, run_sweep_sharded, sweep_box, Census, GeodesicClass, OrderSummary, SweptUnit};
