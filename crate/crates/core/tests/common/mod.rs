#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reciprosim::model::{gossip_merge, Action, MemoryStore, PayoffMatrix, StrategyKind};
use reciprosim::space::{Kinematics, MobilityParams, Vec2};
use reciprosim::{Energy, World, WorldConfig};

/// Plain boolean-vector model of a grudge list.
#[derive(Clone, Debug, PartialEq)]
pub struct ListModel {
    pub bits: Vec<bool>,
    pub capacity: usize,
}

impl ListModel {
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn record(&mut self, id: usize) {
        if !self.bits[id] && self.count() < self.capacity {
            self.bits[id] = true;
        }
    }

    /// Adopts `other`'s extra grudges in ascending id order until full.
    pub fn adopt(&mut self, other: &[bool]) {
        for (id, &theirs) in other.iter().enumerate() {
            if theirs && !self.bits[id] && self.count() < self.capacity {
                self.bits[id] = true;
            }
        }
    }
}

fn check_store(store: &MemoryStore, label: &str) -> Result<(), String> {
    let bits = store.to_bits();
    let count = bits.iter().filter(|&&b| b).count();
    if count != store.true_count() {
        return Err(format!("{label}: true_count {} but {count} bits set", store.true_count()));
    }
    if count > store.capacity() {
        return Err(format!("{label}: {count} grudges over capacity {}", store.capacity()));
    }
    Ok(())
}

/// One randomized sequence of record / decay / merge operations on a few
/// lists, each step checked against [`ListModel`] and the merge laws.
pub fn merge_sequence(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let universe = rng.random_range(1..=150);
    let lists = rng.random_range(2..=4);
    let p = [0.0, 0.01, 0.2][rng.random_range(0..3)];
    let mut stores = Vec::new();
    let mut models = Vec::new();
    for _ in 0..lists {
        let capacity = rng.random_range(1..=universe);
        stores.push(MemoryStore::new(universe, capacity, p).map_err(|e| e.to_string())?);
        models.push(ListModel {
            bits: vec![false; universe],
            capacity,
        });
    }

    let steps = rng.random_range(1..=60);
    for step in 0..steps {
        let i = rng.random_range(0..lists);
        let label = format!("seed {seed} step {step}");
        match rng.random_range(0..3) {
            0 => {
                let id = rng.random_range(0..universe);
                stores[i].record_defection(id);
                models[i].record(id);
            }
            1 => {
                let before = stores[i].to_bits();
                stores[i].decay_step(&mut rng);
                let after = stores[i].to_bits();
                if after.iter().zip(&before).any(|(&a, &b)| a && !b) {
                    return Err(format!("{label}: decay set a bit"));
                }
                models[i].bits = after;
            }
            _ => {
                let j = (i + rng.random_range(1..lists)) % lists;
                let (a0, b0) = (stores[i].to_bits(), stores[j].to_bits());
                let (mut ma, mut mb) = (models[i].clone(), models[j].clone());
                ma.adopt(&b0);
                mb.adopt(&a0);
                let [a, b] = stores.get_disjoint_mut([i, j]).unwrap();
                gossip_merge(a, b);
                if a.to_bits() != ma.bits || b.to_bits() != mb.bits {
                    return Err(format!("{label}: merge differs from ascending-order adoption"));
                }
                let union = a0.iter().zip(&b0).filter(|(x, y)| **x || **y).count();
                if union <= a.capacity().min(b.capacity()) {
                    let or: Vec<bool> = a0.iter().zip(&b0).map(|(x, y)| *x || *y).collect();
                    if a.to_bits() != or || b.to_bits() != or {
                        return Err(format!("{label}: unconstrained merge is not the OR"));
                    }
                    let mut sa = MemoryStore::from_bits(&b0, b.capacity(), p).unwrap();
                    let mut sb = MemoryStore::from_bits(&a0, a.capacity(), p).unwrap();
                    gossip_merge(&mut sa, &mut sb);
                    if sa.to_bits() != or || sb.to_bits() != or {
                        return Err(format!("{label}: merge not commutative"));
                    }
                    let (again_a, again_b) = gossip_merge(a, b);
                    if (again_a, again_b) != (0, 0) || a.to_bits() != or {
                        return Err(format!("{label}: merge not idempotent"));
                    }
                }
                if a0.iter().zip(a.to_bits()).any(|(&x, y)| x && !y) || b0.iter().zip(b.to_bits()).any(|(&x, y)| x && !y) {
                    return Err(format!("{label}: merge lost a grudge"));
                }
                models[i] = ma;
                models[j] = mb;
            }
        }
        for (k, store) in stores.iter().enumerate() {
            check_store(store, &format!("{label} list {k}"))?;
            if store.to_bits() != models[k].bits {
                return Err(format!("{label} list {k}: diverged from the model"));
            }
        }
    }
    Ok(())
}

/// Scripted world: still air (no wiggle), a crawl-speed walk and no cooldown,
/// so every listed pair, placed well inside the interaction radius and far
/// from the others, plays each other on every tick.
pub fn collision_world(kinds: &[StrategyKind], pairs: &[(usize, usize)], capacity: usize, k: f64) -> World {
    let n = kinds.len();
    let mut config = WorldConfig::duel(n, StrategyKind::Otft, capacity);
    let mut composition: Vec<(StrategyKind, usize)> = Vec::new();
    for &kind in kinds {
        match composition.last_mut() {
            Some((last, count)) if *last == kind => *count += 1,
            _ => composition.push((kind, 1)),
        }
    }
    config.composition = composition;
    config.decay = reciprosim::model::DecayParams::Never;
    config.costs.otft.k = k;
    config.costs.gossip.k = k;
    config.density = n as f64 / 400.0;
    config.mobility = MobilityParams {
        step_length: 1e-9,
        heading_jitter: 0.0,
        interaction_radius: 1.0,
        separation_cooldown: 0,
    };
    let mut world = World::new(&config).expect("valid scripted world");
    for (slot, &(a, b)) in pairs.iter().enumerate() {
        let x = 2.0 + 10.0 * slot as f64;
        world.place(a, Kinematics::new(Vec2::new(x, 5.0), 0.0));
        world.place(b, Kinematics::new(Vec2::new(x + 0.25, 5.0), 0.0));
    }
    world
}

/// Hand-derived cumulative scores after `ticks` meetings of one pair, in
/// fixed-point units, using only the (5, 3, 1, 0) table and the cost rule.
pub fn pair_ledger(a: StrategyKind, b: StrategyKind, ticks: u64, capacity: usize, k: f64) -> (i64, i64) {
    let unit = reciprosim::model::UNITS_PER_ENERGY;
    let cost = |kind: StrategyKind| {
        if kind.has_memory() {
            (k * capacity as f64 * unit as f64).round() as i64
        } else {
            0
        }
    };
    let payoff = |mine: Action, theirs: Action| match (mine, theirs) {
        (Action::Cooperate, Action::Cooperate) => 3,
        (Action::Cooperate, Action::Defect) => 0,
        (Action::Defect, Action::Cooperate) => 5,
        (Action::Defect, Action::Defect) => 1,
    };
    let (mut sa, mut sb) = (0i64, 0i64);
    // grudges held by a against b, and by b against a
    let (mut a_holds, mut b_holds) = (false, false);
    for _ in 0..ticks {
        let act = |kind: StrategyKind, holds: bool| {
            if kind == StrategyKind::Alld || holds {
                Action::Defect
            } else {
                Action::Cooperate
            }
        };
        let (x, y) = (act(a, a_holds), act(b, b_holds));
        sa += payoff(x, y) * unit - cost(a);
        sb += payoff(y, x) * unit - cost(b);
        if a.has_memory() && y == Action::Defect && capacity > 0 {
            a_holds = true;
        }
        if b.has_memory() && x == Action::Defect && capacity > 0 {
            b_holds = true;
        }
    }
    (sa, sb)
}

/// Steps `world` for `ticks`, keeping an independent per-agent sum of
/// round deltas and checking every round's arithmetic. Returns the first
/// discrepancy.
pub fn shadow_ledger(world: &mut World, payoff: &PayoffMatrix, ticks: u64) -> Result<u64, String> {
    let mut shadow = vec![Energy::ZERO; world.agents().len()];
    let mut rounds = 0;
    for _ in 0..ticks {
        world.step();
        for (a, b, o) in world.last_rounds() {
            let (pa, pb) = payoff.payoffs(o.actions.0, o.actions.1);
            if (pa, pb) != o.payoffs {
                return Err(format!("tick {}: payoff cell mismatch", world.tick()));
            }
            if o.deltas.0 + o.deltas.1 != pa + pb - o.costs.0 - o.costs.1 {
                return Err(format!("tick {}: round delta sum is off", world.tick()));
            }
            shadow[*a] += o.deltas.0;
            shadow[*b] += o.deltas.1;
            rounds += 1;
        }
        for (agent, expected) in world.agents().iter().zip(&shadow) {
            if agent.score() != *expected {
                return Err(format!(
                    "tick {}: agent {} scored {} but the ledger says {}",
                    world.tick(),
                    agent.id(),
                    agent.score(),
                    expected
                ));
            }
        }
    }
    Ok(rounds)
}
