use crate::error::ConfigError;
use crate::model::{CostTable, DecayParams, PayoffMatrix, StrategyKind};
use crate::space::{world_side_for_population, MobilityParams};

/// Default simulation budget, in ticks.
pub const DEFAULT_MAX_TICKS: u64 = 200_000;
/// Parity is not checked before this tick; both sides start at zero.
pub const DEFAULT_PARITY_GUARD: u64 = 100;
pub const DEFAULT_HALF_LIFE: f64 = 800.0;
pub const DEFAULT_DENSITY: f64 = 0.21;

/// Everything needed to build and run one world.
#[derive(Clone, Debug, PartialEq)]
pub struct WorldConfig {
    pub population: usize,
    /// Strategy groups; ids are handed out group by group in this order.
    pub composition: Vec<(StrategyKind, usize)>,
    /// Grudge-list capacity of every memory-bearing agent.
    pub capacity: usize,
    pub decay: DecayParams,
    pub costs: CostTable,
    pub payoff: PayoffMatrix,
    /// Agents per unit area; the world side is derived from it.
    pub density: f64,
    pub mobility: MobilityParams,
    pub max_ticks: u64,
    pub parity_guard: u64,
    pub seed: u64,
}

impl WorldConfig {
    /// Half defectors (ids first), half `reciprocator`, with default
    /// calibration.
    pub fn duel(population: usize, reciprocator: StrategyKind, capacity: usize) -> Self {
        let defectors = population / 2;
        Self {
            population,
            composition: vec![
                (StrategyKind::Alld, defectors),
                (reciprocator, population - defectors),
            ],
            capacity,
            decay: DecayParams::HalfLife(DEFAULT_HALF_LIFE),
            costs: CostTable::default(),
            payoff: PayoffMatrix::default(),
            density: DEFAULT_DENSITY,
            mobility: MobilityParams::default(),
            max_ticks: DEFAULT_MAX_TICKS,
            parity_guard: DEFAULT_PARITY_GUARD,
            seed: 0,
        }
    }

    /// Same calibration with a different population, keeping the 50/50 split
    /// and the reciprocator kind.
    pub fn with_population(&self, population: usize) -> Self {
        let reciprocator = self.reciprocator().unwrap_or(StrategyKind::Otft);
        let defectors = population / 2;
        Self {
            population,
            composition: vec![
                (StrategyKind::Alld, defectors),
                (reciprocator, population - defectors),
            ],
            ..self.clone()
        }
    }

    /// The single memory-bearing strategy of a two-strategy duel.
    pub fn reciprocator(&self) -> Option<StrategyKind> {
        let mut kinds = self
            .composition
            .iter()
            .filter(|(k, n)| k.has_memory() && *n > 0)
            .map(|(k, _)| *k);
        let first = kinds.next()?;
        kinds.all(|k| k == first).then_some(first)
    }

    pub fn count_of(&self, kind: StrategyKind) -> usize {
        self.composition
            .iter()
            .filter(|(k, _)| *k == kind)
            .map(|(_, n)| n)
            .sum()
    }

    pub fn world_side(&self) -> f64 {
        world_side_for_population(self.population, self.density).unwrap_or(f64::NAN)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |section: &str, key: &str, reason: String| Err(ConfigError::new(section, key, reason));
        if self.population < 2 {
            return err("world", "n", format!("population must be at least 2, got {}", self.population));
        }
        let total: usize = self.composition.iter().map(|(_, n)| n).sum();
        if total != self.population {
            return err(
                "world",
                "defectors",
                format!("strategy counts sum to {total}, expected {}", self.population),
            );
        }
        for (i, (kind, _)) in self.composition.iter().enumerate() {
            if self.composition[..i].iter().any(|(k, _)| k == kind) {
                return err("world", "strategy", format!("{kind} listed twice"));
            }
        }
        let needs_memory = self.composition.iter().any(|(k, n)| k.has_memory() && *n > 0);
        if needs_memory && self.capacity == 0 {
            return err("memory", "capacity", "capacity must be at least 1".into());
        }
        if self.capacity > self.population {
            return err(
                "memory",
                "capacity",
                format!("capacity {} exceeds population {}", self.capacity, self.population),
            );
        }
        if let DecayParams::HalfLife(t) = self.decay {
            if !t.is_finite() || t <= 0.0 {
                return err("memory", "half_life", format!("half-life must be positive, got {t}"));
            }
        }
        for (key, k) in [("k_otft", self.costs.otft.k), ("k_gossip", self.costs.gossip.k)] {
            if !k.is_finite() || k < 0.0 {
                return err("costs", key, format!("cost rate must be non-negative, got {k}"));
            }
        }
        if let Err(e) = self.payoff.validate() {
            return err("world", "payoff", e.to_string());
        }
        if !self.density.is_finite() || self.density <= 0.0 {
            return err("world", "density", format!("density must be positive, got {}", self.density));
        }
        let m = &self.mobility;
        if !m.step_length.is_finite() || m.step_length <= 0.0 {
            return err("mobility", "step_length", format!("must be positive, got {}", m.step_length));
        }
        if !m.heading_jitter.is_finite() || m.heading_jitter < 0.0 {
            return err("mobility", "heading_jitter", format!("must be non-negative, got {}", m.heading_jitter));
        }
        let half_side = 0.5 * self.world_side();
        if !m.interaction_radius.is_finite() || m.interaction_radius <= 0.0 || m.interaction_radius >= half_side {
            return err(
                "mobility",
                "interaction_radius",
                format!("must lie in (0, {half_side}), got {}", m.interaction_radius),
            );
        }
        if self.max_ticks == 0 {
            return err("world", "max_ticks", "budget must be at least one tick".into());
        }
        Ok(())
    }

    /// Checks the two-strategy shape required for parity measurements.
    pub fn validate_duel(&self) -> Result<StrategyKind, ConfigError> {
        self.validate()?;
        let present: Vec<_> = self.composition.iter().filter(|(_, n)| *n > 0).collect();
        let reciprocator = self.reciprocator();
        match (present.len(), self.count_of(StrategyKind::Alld), reciprocator) {
            (2, d, Some(r)) if d > 0 => Ok(r),
            _ => Err(ConfigError::new(
                "world",
                "strategy",
                "parity needs exactly one ALLD group and one reciprocator group",
            )),
        }
    }
}
