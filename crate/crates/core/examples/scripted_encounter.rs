//! A single round by hand, then a two-agent world whose pair meets on every
//! tick, to watch payoffs, memory charges and grudges accumulate.

use reciprosim::model::{play_round, DecayParams, MemoryStore, PayoffMatrix, Player, StrategyKind};
use reciprosim::space::{Kinematics, MobilityParams, Vec2};
use reciprosim::{Energy, World, WorldConfig};

fn main() {
    let matrix = PayoffMatrix::default();
    let mut defector = Player::defector(0);
    let memory = MemoryStore::new(2, 10, 0.0).unwrap();
    let mut otft = Player::reciprocator(1, StrategyKind::Otft, memory, Energy::from_f64(5e-3 * 10.0));
    for round in 1..=3 {
        let o = play_round(&mut defector, &mut otft, &matrix);
        println!(
            "round {round}: actions {:?}, deltas ({}, {}), grudge recorded {}",
            o.actions, o.deltas.0, o.deltas.1, o.recorded.1
        );
    }

    let mut config = WorldConfig::duel(2, StrategyKind::Otft, 2);
    config.decay = DecayParams::Never;
    config.density = 2.0 / 100.0;
    config.mobility = MobilityParams {
        step_length: 1e-6,
        heading_jitter: 0.0,
        interaction_radius: 1.0,
        separation_cooldown: 0,
    };
    let mut world = World::new(&config).unwrap();
    world.place(0, Kinematics::new(Vec2::new(5.0, 5.0), 0.0));
    world.place(1, Kinematics::new(Vec2::new(5.3, 5.0), 0.0));
    for _ in 0..5 {
        world.step();
        let a = &world.agents();
        println!("tick {}: alld {}  otft {}", world.tick(), a[0].score(), a[1].score());
    }
}
