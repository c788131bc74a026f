//! Seeded random streams, simulation of both sides of each characterizing
//! relation, and the two-sample Kolmogorov-Smirnov test.

mod ks;
mod relation;
mod simulate;
mod stream;

pub use ks::{ks_critical_coefficient, ks_statistic, ks_two_sample, KsReport, DEFAULT_ALPHA};
pub use relation::{RelationKind, RelationSpec};
pub use simulate::{sample_exponential, simulate_side_parts, simulate_sides, SideParts, CHUNK_SIZE};
pub use stream::RandomStream;

/// Environment variable overriding the total-draw cap.
pub const MAX_DRAWS_ENV: &str = "OSSHIFT_MAX_DRAWS";
pub const DEFAULT_MAX_DRAWS: u64 = 1_000_000_000;

/// Upper bound on uniforms consumed by a single sampling call.
pub fn draw_cap() -> u64 {
    std::env::var(MAX_DRAWS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DRAWS)
}
