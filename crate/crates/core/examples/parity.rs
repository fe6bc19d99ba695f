//! Ticks until the reciprocators' mean score catches the defectors', for a
//! few seeds.
//!
//! cargo run --release --example parity -- [otft|gossip] [n] [capacity] [seeds]

use reciprosim::seed::derive_seed;
use reciprosim::{run_until_parity, StrategyKind, WorldConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: StrategyKind = args.first().map_or("otft", String::as_str).parse().unwrap();
    let n: usize = args.get(1).map_or(60, |s| s.parse().unwrap());
    let m: usize = args.get(2).map_or(23, |s| s.parse().unwrap());
    let seeds: u64 = args.get(3).map_or(5, |s| s.parse().unwrap());

    for replicate in 0..seeds {
        let mut config = WorldConfig::duel(n, kind, m);
        config.seed = derive_seed(42, &[replicate]);
        let outcome = run_until_parity(&config).unwrap();
        println!("{kind} N={n} m={m} seed={:#018x}: {} after {} ticks", config.seed, outcome.label(), outcome.ticks());
    }
}
