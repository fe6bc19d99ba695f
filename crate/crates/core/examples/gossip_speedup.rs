//! GossipTFT against OTFT: each at its best capacity, how much sooner do
//! the gossipers catch up with the defectors?
//!
//! cargo run --release --example gossip_speedup -- [replicates]

use reciprosim::experiments::{speedup_comparison, SpeedupSpec};

fn main() {
    let replicates: u64 = std::env::args().nth(1).map_or(3, |s| s.parse().unwrap());
    let mut spec = SpeedupSpec::new(vec![40, 100, 160], vec![17, 23, 30, 40, 55, 75, 100], replicates);
    spec.template.max_ticks = 60_000;
    spec.master_seed = 5;
    let report = speedup_comparison(&spec).unwrap();

    let show = |m: Option<usize>, t: f64| match m {
        Some(m) => format!("{t:.0} (m={m})"),
        None => "never".into(),
    };
    for row in &report.rows {
        println!(
            "N={:3}  otft {:>16}  gossip {:>14}  speedup {:.1}{}",
            row.n,
            show(row.baseline_m, row.baseline_median),
            show(row.challenger_m, row.challenger_median),
            row.ratio,
            if row.anomaly { "  (gossip never caught up)" } else { "" }
        );
    }
}
