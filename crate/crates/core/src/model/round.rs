use super::{gossip_merge, Action, Energy, MemoryStore, PayoffMatrix, StrategyKind};

/// Game-theoretic state of one agent: who it is, how it plays, what it
/// remembers and how much energy it has accumulated.
#[derive(Clone, Debug, PartialEq)]
pub struct Player {
    pub id: usize,
    pub kind: StrategyKind,
    pub memory: Option<MemoryStore>,
    /// Energy charged for this player's memory on every encounter.
    pub encounter_cost: Energy,
    pub score: Energy,
}

impl Player {
    pub fn defector(id: usize) -> Self {
        Self {
            id,
            kind: StrategyKind::Alld,
            memory: None,
            encounter_cost: Energy::ZERO,
            score: Energy::ZERO,
        }
    }

    /// A reciprocator with the given memory; `encounter_cost` is its `k * m`.
    pub fn reciprocator(id: usize, kind: StrategyKind, memory: MemoryStore, encounter_cost: Energy) -> Self {
        assert!(kind.has_memory(), "{kind} cannot carry a memory");
        Self {
            id,
            kind,
            memory: Some(memory),
            encounter_cost,
            score: Energy::ZERO,
        }
    }

    pub fn decide(&self, opponent: usize) -> Action {
        decide_action(self.kind, self.memory.as_ref(), opponent)
    }
}

/// Move chosen against `opponent`: defectors always defect, reciprocators
/// defect exactly on the ids they hold a grudge against.
pub fn decide_action(kind: StrategyKind, memory: Option<&MemoryStore>, opponent: usize) -> Action {
    match (kind, memory) {
        (StrategyKind::Alld, _) => Action::Defect,
        (_, Some(mem)) if mem.is_set(opponent) => Action::Defect,
        (_, Some(_)) => Action::Cooperate,
        (kind, None) => panic!("{kind} player without a memory"),
    }
}

/// Everything that happened in one round, from `a`'s and `b`'s side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundOutcome {
    pub actions: (Action, Action),
    pub payoffs: (Energy, Energy),
    pub costs: (Energy, Energy),
    /// Net score change: payoff minus memory cost.
    pub deltas: (Energy, Energy),
    /// Whether each side stored a new grudge against the other.
    pub recorded: (bool, bool),
    /// Grudges adopted through gossip, if both sides gossip.
    pub gossip: Option<(usize, usize)>,
}

/// Plays one prisoner's dilemma round between `a` and `b` and applies the
/// result: both move simultaneously, payoffs and memory charges land on the
/// scores, defections are remembered, and two gossipers then pool their
/// grudge lists.
pub fn play_round(a: &mut Player, b: &mut Player, matrix: &PayoffMatrix) -> RoundOutcome {
    assert_ne!(a.id, b.id, "a player cannot meet itself");
    let actions = (a.decide(b.id), b.decide(a.id));
    let payoffs = matrix.payoffs(actions.0, actions.1);
    let costs = (a.encounter_cost, b.encounter_cost);
    let deltas = (payoffs.0 - costs.0, payoffs.1 - costs.1);
    a.score += deltas.0;
    b.score += deltas.1;

    let recorded = (
        remember(a, b.id, actions.1),
        remember(b, a.id, actions.0),
    );

    let gossip = match (a.kind, b.kind, a.memory.as_mut(), b.memory.as_mut()) {
        (StrategyKind::GossipTft, StrategyKind::GossipTft, Some(ma), Some(mb)) => Some(gossip_merge(ma, mb)),
        _ => None,
    };

    RoundOutcome {
        actions,
        payoffs,
        costs,
        deltas,
        recorded,
        gossip,
    }
}

fn remember(player: &mut Player, opponent: usize, their_action: Action) -> bool {
    match (&mut player.memory, their_action) {
        (Some(mem), Action::Defect) => mem.record_defection(opponent),
        _ => false,
    }
}
