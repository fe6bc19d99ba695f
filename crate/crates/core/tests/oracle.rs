mod common;

use common::{collision_world, pair_ledger};
use reciprosim::model::{StrategyKind::*, UNITS_PER_ENERGY};

#[test]
fn defector_meets_reciprocator_every_tick() {
    let mut world = collision_world(&[Alld, Otft], &[(0, 1)], 2, 5e-3);
    let scores = |w: &reciprosim::World| (w.agents()[0].score().units(), w.agents()[1].score().units());
    let unit = UNITS_PER_ENERGY;

    world.step();
    assert_eq!(world.last_rounds().len(), 1);
    assert_eq!(scores(&world), (5 * unit, -unit / 100));
    world.step();
    assert_eq!(scores(&world), (6 * unit, unit - 2 * unit / 100));
    for _ in 0..498 {
        world.step();
        assert_eq!(world.last_rounds().len(), 1);
    }
    // 5 + 499 for the defector, 499 - 500 * 0.01 for the reciprocator
    assert_eq!(scores(&world), (504 * unit, 494 * unit));
    assert_eq!(scores(&world), pair_ledger(Alld, Otft, 500, 2, 5e-3));
}

#[test]
fn four_agents_two_scripted_pairs() {
    let kinds = [Alld, Alld, GossipTft, GossipTft];
    let mut world = collision_world(&kinds, &[(0, 3), (2, 1)], 3, 8e-3);
    let ticks = 777;
    for tick in 1..=ticks {
        world.step();
        let mut pairs: Vec<_> = world.last_rounds().iter().map(|(a, b, _)| (*a, *b)).collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 3), (1, 2)], "tick {tick}");
    }
    let (d0, g3) = pair_ledger(Alld, GossipTft, ticks, 3, 8e-3);
    let (d1, g2) = pair_ledger(Alld, GossipTft, ticks, 3, 8e-3);
    let got: Vec<i64> = world.agents().iter().map(|a| a.score().units()).collect();
    assert_eq!(got, vec![d0, d1, g2, g3]);
    assert!(world.agents()[3].memory().unwrap().is_set(0));
    assert!(world.agents()[2].memory().unwrap().is_set(1));
}

#[test]
fn reciprocators_cooperate_forever() {
    let mut world = collision_world(&[Otft, Otft], &[(0, 1)], 1, 0.0);
    for _ in 0..100 {
        world.step();
    }
    let unit = UNITS_PER_ENERGY;
    assert_eq!(world.agents()[0].score().units(), 300 * unit);
    assert_eq!(pair_ledger(Otft, Otft, 100, 1, 0.0), (300 * unit, 300 * unit));
}
