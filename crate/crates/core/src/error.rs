use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("half-life must be positive and finite, got {0}")]
    HalfLife(f64),
    #[error("decay probability must lie in [0, 1], got {0}")]
    DecayProbability(f64),
    #[error("memory capacity must be at least 1")]
    ZeroCapacity,
    #[error("population must be at least 2, got {0}")]
    Population(usize),
    #[error("world side length must be positive and finite, got {0}")]
    Side(f64),
    #[error("density must be positive and finite, got {0}")]
    Density(f64),
    #[error("payoff matrix violates T > R > P > S and 2R > T + S: {0:?}")]
    Payoff([f64; 4]),
    #[error("memory cost rate must be non-negative and finite, got {0}")]
    CostRate(f64),
    #[error("at least two points with distinct x are required for a regression")]
    Regression,
}

/// Configuration problem, always naming the offending `section.key`.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("[{section}].{key}: {reason}")]
pub struct ConfigError {
    pub section: String,
    pub key: String,
    pub reason: String,
}

impl ConfigError {
    pub fn new(section: &str, key: &str, reason: impl Into<String>) -> Self {
        Self {
            section: section.to_string(),
            key: key.to_string(),
            reason: reason.into(),
        }
    }

    /// Fully qualified key, e.g. `[memory].half_life`.
    pub fn key_path(&self) -> String {
        format!("[{}].{}", self.section, self.key)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Syntax {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
