//! A U-curve: averaged parity time against memory capacity at one group
//! size. Small capacities cannot hold enough grudges; large ones cost more
//! than they return.
//!
//! cargo run --release --example capacity_sweep -- [n] [replicates]

use reciprosim::experiments::{run_sweep, SweepSpec};
use reciprosim::StrategyKind;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().unwrap()).collect();
    let n = *args.first().unwrap_or(&60);
    let replicates = *args.get(1).unwrap_or(&5) as u64;

    let mut spec = SweepSpec::new(vec![n], vec![5, 10, 15, 20, 25, 30, 40, 50, 60], replicates, StrategyKind::Otft);
    spec.template.max_ticks = 50_000;
    spec.master_seed = 7;
    let result = run_sweep(&spec).unwrap();

    println!("{:>4} {:>12} {:>10}", "m", "mean ticks", "exhausted");
    for cell in result.curve(n) {
        let mean = cell.mean_ticks.map_or("-".to_string(), |t| format!("{t:.0}"));
        println!("{:4} {:>12} {:>7}/{}", cell.m, mean, cell.exhausted, cell.runs);
    }
    match result.minimum(n) {
        Some(min) => println!("optimal capacity {} at {:.0} ticks", min.m_opt, min.t_min),
        None => println!("no capacity reached parity within the budget"),
    }
}
