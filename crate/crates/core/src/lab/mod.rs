//! Numerical studies built on the engine: where the limit holds, how fast
//! the sums approach it, and the structure of the small-`h` expansion.
//!
//! Each study evaluates its schedule in parallel and assembles results in
//! schedule order, so reports never depend on scheduling.

mod convergence;
mod fit;
mod growth;
mod mmr;
mod region;
mod shifted;

pub use convergence::{limit_study, tail_ratio, ConvergenceReport};
pub use fit::{least_squares, log_log_slope};
pub use growth::{growth_rate_study, lobachevsky, volume_reference, Extrapolation, GrowthReport};
pub use mmr::{diagonal_oracle, mmr_study, MmrTable};
pub use region::{landmarks, region_check, Landmark, RegionVerdict};
pub use shifted::{shifted_gap_study, three_term_bound, ShiftedGapReport, TAYLOR_SCAN};

use crate::error::{Error, Result};

/// Doubling schedule used when none is given.
pub const DEFAULT_SCHEDULE: [u32; 6] = [25, 50, 100, 200, 400, 800];

pub(crate) fn validate_schedule(schedule: &[u32], min: u32) -> Result<()> {
    if schedule.is_empty() || schedule[0] < min || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadSchedule);
    }
    Ok(())
}
