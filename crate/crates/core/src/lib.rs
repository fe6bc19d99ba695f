//! Spatial iterated prisoner's dilemma between always-defectors and
//! tit-for-tat agents whose grudge memory is bounded, forgets over time and
//! costs energy, optionally pooled through gossip.
//!
//! The crate is layered bottom-up:
//!
//! - [`model`]: strategies, payoffs, grudge lists and a single round.
//! - [`space`]: torus geometry, random walk and encounter detection.
//! - [`sim`]: the tick loop, fitness metrics and parity measurement.
//! - [`experiments`]: capacity sweeps, U-curve minima, regression and
//!   gossip speedup.
//! - [`io`]: config files, CSV output, run manifests and the CLI.

pub mod error;
pub mod experiments;
pub mod io;
pub mod model;
pub mod seed;
pub mod sim;
pub mod space;

pub use error::{ConfigError, Error, ParamError, Result};
pub use model::{Action, Energy, MemoryStore, PayoffMatrix, StrategyKind};
pub use sim::{run_until_parity, ParityOutcome, World, WorldConfig};
