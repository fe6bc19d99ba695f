//! Measurement pipeline: capacity sweeps, U-curve minima, the optimal
//! capacity regression and the gossip speedup.

mod analysis;
mod speedup;
mod sweep;

pub use analysis::{median_ticks, optimal_capacity_regression, u_curve_minimum, CapacityMinimum, RegressionResult};
pub use speedup::{speedup_comparison, speedup_ratio, speedup_rows, SpeedupReport, SpeedupRow, SpeedupSpec};
pub use sweep::{
    run_sweep, run_sweep_with_workers, CellSummary, SweepRecord, SweepResult, SweepSpec, DEFAULT_CAPACITIES,
};
