//! One world of defectors and oblivious tit-for-tat agents, printing the
//! fitness shares as the reciprocators learn who to avoid.
//!
//! cargo run --release --example single_duel -- [n] [capacity] [ticks] [seed]

use reciprosim::{StrategyKind, World, WorldConfig};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let n = *args.first().unwrap_or(&40) as usize;
    let m = *args.get(1).unwrap_or(&17) as usize;
    let ticks = *args.get(2).unwrap_or(&3_000);
    let mut config = WorldConfig::duel(n, StrategyKind::Otft, m);
    config.seed = *args.get(3).unwrap_or(&1);

    let mut world = World::new(&config).unwrap();
    println!("N={n} m={m} side={:.2}", world.geometry().side());
    println!("{:>6} {:>10} {:>10} {:>8}", "tick", "alld", "otft", "share");
    for _ in 0..ticks {
        let row = world.step();
        if row.tick % (ticks / 15).max(1) == 0 {
            let mean = |k| row.stats(k).map_or(0.0, |s| s.mean_score());
            let share = row
                .relative_fitness()
                .into_iter()
                .find(|(k, _)| *k == StrategyKind::Otft)
                .and_then(|(_, f)| f);
            println!(
                "{:6} {:10.2} {:10.2} {:>8}",
                row.tick,
                mean(StrategyKind::Alld),
                mean(StrategyKind::Otft),
                share.map_or("-".into(), |f| format!("{f:.4}"))
            );
        }
    }
}
