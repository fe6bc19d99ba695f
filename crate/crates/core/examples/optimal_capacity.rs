//! Optimal capacity against group size, and the least-squares line through
//! the optima. Writes the three sweep tables to `target/optimal_capacity/`.
//!
//! cargo run --release --example optimal_capacity -- [replicates]

use std::path::Path;

use reciprosim::experiments::{optimal_capacity_regression, run_sweep, SweepSpec};
use reciprosim::io::{aggregate_csv, cells_csv, minima_csv, write_file};
use reciprosim::StrategyKind;

fn main() {
    let replicates: u64 = std::env::args().nth(1).map_or(3, |s| s.parse().unwrap());
    let sizes = vec![40, 60, 80, 100, 120, 140];
    let mut spec = SweepSpec::new(sizes, vec![12, 17, 23, 30, 40, 55, 75], replicates, StrategyKind::Otft);
    spec.template.max_ticks = 60_000;
    spec.master_seed = 11;
    let result = run_sweep(&spec).unwrap();

    let out = Path::new("target/optimal_capacity");
    write_file(&out.join("cells.csv"), &cells_csv(&result)).unwrap();
    write_file(&out.join("aggregate.csv"), &aggregate_csv(&result)).unwrap();
    write_file(&out.join("minima.csv"), &minima_csv(&result.minima())).unwrap();

    let mut points = Vec::new();
    for (n, min) in result.minima() {
        match min {
            Some(min) => {
                println!("N={n:3}  m_opt={:3}  t_min={:.0}", min.m_opt, min.t_min);
                points.push((n as f64, min.m_opt as f64));
            }
            None => println!("N={n:3}  no capacity reached parity"),
        }
    }
    if let Ok(fit) = optimal_capacity_regression(&points) {
        println!("m_opt ~ {:.3} N + {:.2}, r = {:.4}", fit.slope, fit.intercept, fit.r);
    }
    println!("tables in {}", out.display());
}
