use crate::model::{Energy, StrategyKind};

/// Aggregate state of one strategy group at the end of a tick.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrategyStats {
    pub kind: StrategyKind,
    pub agents: usize,
    pub total_score: Energy,
    /// Rounds played by members of this group during the tick.
    pub encounters: u64,
}

impl StrategyStats {
    pub fn mean_score(&self) -> f64 {
        if self.agents == 0 {
            return 0.0;
        }
        self.total_score.units() as f64 / self.agents as f64 / crate::model::UNITS_PER_ENERGY as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TickMetrics {
    pub tick: u64,
    /// Rounds played this tick.
    pub pairs: usize,
    /// One entry per strategy present, ordered by strategy.
    pub strategies: Vec<StrategyStats>,
}

impl TickMetrics {
    pub fn stats(&self, kind: StrategyKind) -> Option<&StrategyStats> {
        self.strategies.iter().find(|s| s.kind == kind)
    }

    /// Each strategy's share of the summed mean scores; `None` for every
    /// strategy when any mean is not positive.
    pub fn relative_fitness(&self) -> Vec<(StrategyKind, Option<f64>)> {
        relative_shares(&self.strategies)
    }

    /// Whether `challenger`'s mean score has caught up with `leader`'s,
    /// compared exactly on the fixed-point totals.
    pub fn has_caught_up(&self, challenger: StrategyKind, leader: StrategyKind) -> bool {
        match (self.stats(challenger), self.stats(leader)) {
            (Some(c), Some(l)) => mean_at_least(c, l),
            _ => false,
        }
    }
}

pub(crate) fn mean_at_least(a: &StrategyStats, b: &StrategyStats) -> bool {
    // a.total / a.agents >= b.total / b.agents, with positive agent counts
    a.total_score.units() as i128 * b.agents as i128 >= b.total_score.units() as i128 * a.agents as i128
}

pub(crate) fn relative_shares(stats: &[StrategyStats]) -> Vec<(StrategyKind, Option<f64>)> {
    let means: Vec<f64> = stats.iter().map(StrategyStats::mean_score).collect();
    let defined = means.iter().all(|&m| m > 0.0);
    let total: f64 = means.iter().sum();
    stats
        .iter()
        .zip(&means)
        .map(|(s, &m)| (s.kind, defined.then(|| m / total)))
        .collect()
}

/// Per-tick history of a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FitnessSeries {
    pub rows: Vec<TickMetrics>,
}

impl FitnessSeries {
    pub fn push(&mut self, metrics: TickMetrics) {
        self.rows.push(metrics);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn last(&self) -> Option<&TickMetrics> {
        self.rows.last()
    }
}
