//! The tick loop: random walk, encounters, rounds, forgetting, and the
//! fitness bookkeeping built on top of it.

mod config;
mod metrics;
mod parity;
mod world;

pub use config::{
    WorldConfig, DEFAULT_DENSITY, DEFAULT_HALF_LIFE, DEFAULT_MAX_TICKS, DEFAULT_PARITY_GUARD,
};
pub use metrics::{FitnessSeries, StrategyStats, TickMetrics};
pub use parity::{run_until_parity, ParityOutcome};
pub use world::{AgentState, World};
