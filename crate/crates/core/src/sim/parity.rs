use super::config::WorldConfig;
use super::world::World;
use crate::error::ConfigError;
use crate::model::StrategyKind;

/// How a parity measurement ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityOutcome {
    /// Reciprocators' mean score first matched the defectors' at this tick.
    Reached { tick: u64 },
    /// The budget ran out first.
    Exhausted { max_ticks: u64 },
}

impl ParityOutcome {
    pub fn reached_at(&self) -> Option<u64> {
        match *self {
            ParityOutcome::Reached { tick } => Some(tick),
            ParityOutcome::Exhausted { .. } => None,
        }
    }

    /// Tick count reported in tables: the parity tick, or the budget.
    pub fn ticks(&self) -> u64 {
        match *self {
            ParityOutcome::Reached { tick } => tick,
            ParityOutcome::Exhausted { max_ticks } => max_ticks,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ParityOutcome::Reached { .. } => "reached",
            ParityOutcome::Exhausted { .. } => "exhausted",
        }
    }
}

/// Runs a defectors-versus-reciprocators world until the reciprocators'
/// mean cumulative score reaches the defectors', checking from tick
/// `parity_guard` on, or until `max_ticks`.
pub fn run_until_parity(config: &WorldConfig) -> Result<ParityOutcome, ConfigError> {
    let reciprocator = config.validate_duel()?;
    let mut world = World::new(config)?;
    Ok(world.run_until_parity(reciprocator, config.parity_guard, config.max_ticks))
}

impl World {
    pub fn run_until_parity(&mut self, reciprocator: StrategyKind, guard: u64, max_ticks: u64) -> ParityOutcome {
        while self.tick() < max_ticks {
            let metrics = self.step();
            if metrics.tick >= guard && metrics.has_caught_up(reciprocator, StrategyKind::Alld) {
                return ParityOutcome::Reached { tick: metrics.tick };
            }
        }
        ParityOutcome::Exhausted { max_ticks }
    }
}
