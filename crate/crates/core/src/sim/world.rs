use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::WorldConfig;
use super::metrics::{FitnessSeries, StrategyStats, TickMetrics};
use crate::error::ConfigError;
use crate::model::{play_round, Energy, MemoryStore, PayoffMatrix, Player, RoundOutcome, StrategyKind};
use crate::space::{move_agent, separate, EncounterDetector, Kinematics, MobilityParams, TorusGeometry, Vec2};

const NO_PARTNER: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq)]
pub struct AgentState {
    pub player: Player,
    pub kinematics: Kinematics,
    last_partner: usize,
    last_game: u64,
}

impl AgentState {
    pub fn id(&self) -> usize {
        self.player.id
    }

    pub fn kind(&self) -> StrategyKind {
        self.player.kind
    }

    pub fn score(&self) -> Energy {
        self.player.score
    }

    pub fn memory(&self) -> Option<&MemoryStore> {
        self.player.memory.as_ref()
    }
}

/// A running simulation: agents on a torus plus the single random stream
/// that drives them.
///
/// Random draws happen in a fixed order. At construction each agent, by
/// ascending id, draws x, y and heading. Each tick then draws one heading
/// wiggle per agent (ascending id), one angle per coincident pair when
/// separating, and the decay draws of each memory (ascending id).
#[derive(Clone, Debug)]
pub struct World {
    tick: u64,
    agents: Vec<AgentState>,
    geometry: TorusGeometry,
    mobility: MobilityParams,
    payoff: PayoffMatrix,
    rng: ChaCha8Rng,
    kinds: Vec<StrategyKind>,
    detector: EncounterDetectorCell,
    positions: Vec<Vec2>,
    pairs: Vec<(usize, usize)>,
    rounds: Vec<(usize, usize, RoundOutcome)>,
}

// EncounterDetector holds only scratch space; a clone starts empty.
#[derive(Debug, Default)]
struct EncounterDetectorCell(EncounterDetector);

impl Clone for EncounterDetectorCell {
    fn clone(&self) -> Self {
        Self::default()
    }
}

impl World {
    /// Builds the initial world: ids handed out group by group, memories
    /// empty, scores zero, positions and headings uniform.
    pub fn new(config: &WorldConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let geometry = TorusGeometry::for_population(config.population, config.density)
            .map_err(|e| ConfigError::new("world", "density", e.to_string()))?;
        let p = config.decay.probability();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

        let mut agents = Vec::with_capacity(config.population);
        for &(kind, count) in &config.composition {
            for _ in 0..count {
                let id = agents.len();
                let player = if kind.has_memory() {
                    let memory = MemoryStore::new(config.population, config.capacity, p)
                        .map_err(|e| ConfigError::new("memory", "capacity", e.to_string()))?;
                    Player::reciprocator(id, kind, memory, config.costs.charge(kind, config.capacity))
                } else {
                    Player::defector(id)
                };
                agents.push(AgentState {
                    player,
                    kinematics: Kinematics::new(Vec2::default(), 0.0),
                    last_partner: NO_PARTNER,
                    last_game: 0,
                });
            }
        }
        for agent in &mut agents {
            agent.kinematics = Kinematics::random(&geometry, &mut rng);
        }

        let mut kinds: Vec<StrategyKind> = config
            .composition
            .iter()
            .filter(|(_, n)| *n > 0)
            .map(|(k, _)| *k)
            .collect();
        kinds.sort();

        Ok(Self {
            tick: 0,
            agents,
            geometry,
            mobility: config.mobility,
            payoff: config.payoff,
            rng,
            kinds,
            detector: EncounterDetectorCell::default(),
            positions: Vec::new(),
            pairs: Vec::new(),
            rounds: Vec::new(),
        })
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    pub fn geometry(&self) -> &TorusGeometry {
        &self.geometry
    }

    /// Rounds played during the most recent tick, in play order.
    pub fn last_rounds(&self) -> &[(usize, usize, RoundOutcome)] {
        &self.rounds
    }

    /// Places an agent by hand (test scenarios, demonstrations).
    pub fn place(&mut self, id: usize, kinematics: Kinematics) {
        let mut k = kinematics;
        k.position = self.geometry.wrap(k.position);
        self.agents[id].kinematics = k;
    }

    /// Advances one tick: move, find encounters, play, separate, forget.
    pub fn step(&mut self) -> TickMetrics {
        self.tick += 1;
        let tick = self.tick;

        for agent in &mut self.agents {
            move_agent(&mut agent.kinematics, &self.mobility, &self.geometry, &mut self.rng);
        }

        self.positions.clear();
        self.positions.extend(self.agents.iter().map(|a| a.kinematics.position));
        let cooldown = self.mobility.separation_cooldown;
        let agents = &self.agents;
        let cooling = |a: usize, b: usize| {
            let recent = |x: &AgentState, other: usize| {
                x.last_partner == other && tick - x.last_game <= cooldown
            };
            recent(&agents[a], b) || recent(&agents[b], a)
        };
        self.detector.0.detect(
            &self.positions,
            self.mobility.interaction_radius,
            &self.geometry,
            cooling,
            &mut self.pairs,
        );

        self.rounds.clear();
        for &(a, b) in &self.pairs {
            let [x, y] = self.agents.get_disjoint_mut([a, b]).expect("distinct ids");
            let outcome = play_round(&mut x.player, &mut y.player, &self.payoff);
            self.rounds.push((a, b, outcome));
        }

        for &(a, b) in &self.pairs {
            let [x, y] = self.agents.get_disjoint_mut([a, b]).expect("distinct ids");
            separate(&mut x.kinematics, &mut y.kinematics, &self.geometry, &mut self.rng);
            x.last_partner = b;
            y.last_partner = a;
            x.last_game = tick;
            y.last_game = tick;
        }

        for agent in &mut self.agents {
            if let Some(memory) = agent.player.memory.as_mut() {
                memory.decay_step(&mut self.rng);
            }
        }

        self.metrics()
    }

    /// Per-strategy totals for the current state; encounter counts refer to
    /// the most recent tick.
    pub fn metrics(&self) -> TickMetrics {
        let mut strategies: Vec<StrategyStats> = self
            .kinds
            .iter()
            .map(|&kind| StrategyStats {
                kind,
                agents: 0,
                total_score: Energy::ZERO,
                encounters: 0,
            })
            .collect();
        let slot = |kind: StrategyKind| self.kinds.binary_search(&kind).expect("known strategy");
        for agent in &self.agents {
            let s = &mut strategies[slot(agent.kind())];
            s.agents += 1;
            s.total_score += agent.score();
        }
        for &(a, b, _) in &self.rounds {
            strategies[slot(self.agents[a].kind())].encounters += 1;
            strategies[slot(self.agents[b].kind())].encounters += 1;
        }
        TickMetrics {
            tick: self.tick,
            pairs: self.rounds.len(),
            strategies,
        }
    }

    /// Each present strategy's share of the summed mean scores (see
    /// [`TickMetrics::relative_fitness`]).
    pub fn relative_fitness(&self) -> Vec<(StrategyKind, Option<f64>)> {
        self.metrics().relative_fitness()
    }

    /// Steps `ticks` times, recording every tick.
    pub fn run(&mut self, ticks: u64) -> FitnessSeries {
        let mut series = FitnessSeries::default();
        for _ in 0..ticks {
            series.push(self.step());
        }
        series
    }
}
