//! Strategies, payoffs, grudge memories and a single prisoner's dilemma
//! round between two players.

mod energy;
mod memory;
mod round;

pub use energy::{Energy, UNITS_PER_ENERGY};
pub use memory::{gossip_merge, half_life_to_probability, DecayParams, MemoryStore};
pub use round::{decide_action, play_round, Player, RoundOutcome};

use std::fmt;
use std::str::FromStr;

use crate::error::ParamError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    Cooperate,
    Defect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrategyKind {
    /// Always defect. Carries no memory and pays no memory cost.
    Alld,
    /// Tit-for-tat with a bounded, forgetting grudge list.
    Otft,
    /// [`StrategyKind::Otft`] that also pools grudges with other gossipers.
    GossipTft,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 3] = [StrategyKind::Alld, StrategyKind::Otft, StrategyKind::GossipTft];

    pub fn has_memory(self) -> bool {
        !matches!(self, StrategyKind::Alld)
    }

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Alld => "alld",
            StrategyKind::Otft => "otft",
            StrategyKind::GossipTft => "gossip",
        }
    }

    /// Stable small integer used in seed derivation.
    pub fn code(self) -> u64 {
        match self {
            StrategyKind::Alld => 0,
            StrategyKind::Otft => 1,
            StrategyKind::GossipTft => 2,
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "alld" => Ok(StrategyKind::Alld),
            "otft" => Ok(StrategyKind::Otft),
            "gossip" | "gossiptft" | "gossip_tft" => Ok(StrategyKind::GossipTft),
            other => Err(format!("unknown strategy `{other}` (expected alld, otft or gossip)")),
        }
    }
}

/// Prisoner's dilemma payoffs, in energy units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PayoffMatrix {
    pub temptation: f64,
    pub reward: f64,
    pub punishment: f64,
    pub sucker: f64,
}

impl Default for PayoffMatrix {
    fn default() -> Self {
        Self::AXELROD
    }
}

impl PayoffMatrix {
    /// (T, R, P, S) = (5, 3, 1, 0).
    pub const AXELROD: PayoffMatrix = PayoffMatrix {
        temptation: 5.0,
        reward: 3.0,
        punishment: 1.0,
        sucker: 0.0,
    };

    pub fn new(temptation: f64, reward: f64, punishment: f64, sucker: f64) -> Result<Self, ParamError> {
        let m = PayoffMatrix {
            temptation,
            reward,
            punishment,
            sucker,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let PayoffMatrix {
            temptation: t,
            reward: r,
            punishment: p,
            sucker: s,
        } = *self;
        let finite = [t, r, p, s].iter().all(|v| v.is_finite());
        if finite && t > r && r > p && p > s && 2.0 * r > t + s {
            Ok(())
        } else {
            Err(ParamError::Payoff([t, r, p, s]))
        }
    }

    /// Payoffs to (`mine`, `theirs`) for one simultaneous move.
    pub fn payoffs(&self, mine: Action, theirs: Action) -> (Energy, Energy) {
        let (a, b) = match (mine, theirs) {
            (Action::Cooperate, Action::Cooperate) => (self.reward, self.reward),
            (Action::Cooperate, Action::Defect) => (self.sucker, self.temptation),
            (Action::Defect, Action::Cooperate) => (self.temptation, self.sucker),
            (Action::Defect, Action::Defect) => (self.punishment, self.punishment),
        };
        (Energy::from_f64(a), Energy::from_f64(b))
    }
}

/// Memory cost rate `k`: energy charged per unit of capacity per encounter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostParams {
    pub k: f64,
}

impl CostParams {
    pub fn new(k: f64) -> Result<Self, ParamError> {
        if !k.is_finite() || k < 0.0 {
            return Err(ParamError::CostRate(k));
        }
        Ok(Self { k })
    }

    /// Per-encounter charge `k * m` for a memory of capacity `m`.
    pub fn encounter_cost(&self, capacity: usize) -> Energy {
        Energy::from_f64(self.k)
            .checked_mul(capacity as i64)
            .expect("memory cost overflows the energy range")
    }
}

/// Cost rate for each memory-bearing strategy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostTable {
    pub otft: CostParams,
    pub gossip: CostParams,
}

impl Default for CostTable {
    fn default() -> Self {
        Self {
            otft: CostParams { k: 5e-3 },
            gossip: CostParams { k: 8e-3 },
        }
    }
}

impl CostTable {
    pub fn for_kind(&self, kind: StrategyKind) -> Option<CostParams> {
        match kind {
            StrategyKind::Alld => None,
            StrategyKind::Otft => Some(self.otft),
            StrategyKind::GossipTft => Some(self.gossip),
        }
    }

    /// Energy `kind` pays per encounter with a memory of `capacity` slots.
    pub fn charge(&self, kind: StrategyKind, capacity: usize) -> Energy {
        self.for_kind(kind)
            .map_or(Energy::ZERO, |c| c.encounter_cost(capacity))
    }
}
