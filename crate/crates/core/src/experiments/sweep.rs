use rayon::prelude::*;

use crate::error::ConfigError;
use crate::model::StrategyKind;
use crate::seed::derive_seed;
use crate::sim::{run_until_parity, ParityOutcome, WorldConfig};

use super::analysis::{median_ticks, u_curve_minimum, CapacityMinimum};

/// Capacities tried when none are given; clipped to `m <= N` per group size.
pub const DEFAULT_CAPACITIES: [usize; 13] = [1, 2, 3, 5, 8, 12, 17, 23, 30, 40, 55, 75, 100];

/// A grid of parity measurements over group sizes and capacities.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub sizes: Vec<usize>,
    pub capacities: Vec<usize>,
    pub replicates: u64,
    /// Everything except population, capacity and seed is taken from here.
    pub template: WorldConfig,
    pub kind: StrategyKind,
    pub master_seed: u64,
}

impl SweepSpec {
    pub fn new(sizes: Vec<usize>, capacities: Vec<usize>, replicates: u64, kind: StrategyKind) -> Self {
        Self {
            sizes,
            capacities,
            replicates,
            template: WorldConfig::duel(2, kind, 1),
            kind,
            master_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.sizes.is_empty() {
            return Err(ConfigError::new("sweep", "sizes", "no group sizes given"));
        }
        if self.capacities.is_empty() {
            return Err(ConfigError::new("sweep", "capacities", "no capacities given"));
        }
        if self.replicates == 0 {
            return Err(ConfigError::new("sweep", "replicates", "at least one replicate is required"));
        }
        if !self.kind.has_memory() {
            return Err(ConfigError::new("world", "strategy", "the swept strategy must carry a memory"));
        }
        for &n in &self.sizes {
            if self.capacities_for(n).is_empty() {
                return Err(ConfigError::new(
                    "sweep",
                    "capacities",
                    format!("no capacity fits group size {n}"),
                ));
            }
            self.config_for(n, self.capacities_for(n)[0], 0).validate_duel()?;
        }
        Ok(())
    }

    /// Capacities used at group size `n`: the grid, clipped to `m <= n`,
    /// sorted and deduplicated.
    pub fn capacities_for(&self, n: usize) -> Vec<usize> {
        let mut caps: Vec<usize> = self.capacities.iter().copied().filter(|&m| m >= 1 && m <= n).collect();
        caps.sort_unstable();
        caps.dedup();
        caps
    }

    pub fn cell_seed(&self, n: usize, m: usize, replicate: u64) -> u64 {
        derive_seed(self.master_seed, &[n as u64, m as u64, self.kind.code(), replicate])
    }

    /// The world of one cell.
    pub fn config_for(&self, n: usize, m: usize, replicate: u64) -> WorldConfig {
        let mut config = self.template.clone();
        config.population = n;
        config.composition = vec![(StrategyKind::Alld, n / 2), (self.kind, n - n / 2)];
        config.capacity = m;
        config.seed = self.cell_seed(n, m, replicate);
        config
    }

    fn cells(&self) -> Vec<(usize, usize, u64)> {
        let mut sizes = self.sizes.clone();
        sizes.sort_unstable();
        sizes.dedup();
        let mut cells = Vec::new();
        for n in sizes {
            for m in self.capacities_for(n) {
                for r in 0..self.replicates {
                    cells.push((n, m, r));
                }
            }
        }
        cells
    }
}

/// One parity run of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepRecord {
    pub n: usize,
    pub m: usize,
    pub replicate: u64,
    pub seed: u64,
    pub outcome: ParityOutcome,
}

/// Replicates of one (N, m) cell folded together. Exhausted runs are left
/// out of the mean and counted separately.
#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub m: usize,
    pub runs: usize,
    pub exhausted: usize,
    pub mean_ticks: Option<f64>,
    /// Median with exhausted runs counted as infinitely slow.
    pub median_ticks: f64,
}

impl CellSummary {
    fn from_records(records: &[SweepRecord]) -> Self {
        let reached: Vec<u64> = records.iter().filter_map(|r| r.outcome.reached_at()).collect();
        let mean_ticks = (!reached.is_empty()).then(|| reached.iter().sum::<u64>() as f64 / reached.len() as f64);
        let outcomes: Vec<ParityOutcome> = records.iter().map(|r| r.outcome).collect();
        Self {
            n: records[0].n,
            m: records[0].m,
            runs: records.len(),
            exhausted: records.len() - reached.len(),
            mean_ticks,
            median_ticks: median_ticks(&outcomes),
        }
    }

    pub fn exhausted_fraction(&self) -> f64 {
        self.exhausted as f64 / self.runs as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Sorted by (n, m, replicate).
    pub records: Vec<SweepRecord>,
    /// Sorted by (n, m).
    pub cells: Vec<CellSummary>,
}

impl SweepResult {
    /// Builds the aggregates from records in any order.
    pub fn from_records(mut records: Vec<SweepRecord>) -> Self {
        records.sort_by_key(|r| (r.n, r.m, r.replicate));
        let cells = records
            .chunk_by(|a, b| (a.n, a.m) == (b.n, b.m))
            .map(CellSummary::from_records)
            .collect();
        Self { records, cells }
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.cells.iter().map(|c| c.n).collect();
        sizes.dedup();
        sizes
    }

    pub fn curve(&self, n: usize) -> impl Iterator<Item = &CellSummary> {
        self.cells.iter().filter(move |c| c.n == n)
    }

    /// Lowest averaged time at `n`; `None` when every capacity exhausted.
    pub fn minimum(&self, n: usize) -> Option<CapacityMinimum> {
        let points: Vec<(usize, Option<f64>)> = self.curve(n).map(|c| (c.m, c.mean_ticks)).collect();
        u_curve_minimum(&points)
    }

    /// Per group size, its minimum if any.
    pub fn minima(&self) -> Vec<(usize, Option<CapacityMinimum>)> {
        self.sizes().into_iter().map(|n| (n, self.minimum(n))).collect()
    }

    /// Best per-capacity median at `n` with its capacity (smallest on ties);
    /// infinite when no capacity has a finite median.
    pub fn best_median(&self, n: usize) -> (Option<usize>, f64) {
        let mut best = (None, f64::INFINITY);
        for c in self.curve(n) {
            if c.median_ticks < best.1 {
                best = (Some(c.m), c.median_ticks);
            }
        }
        best
    }
}

/// Runs every cell of `spec` on the current rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, ConfigError> {
    spec.validate()?;
    let records = spec
        .cells()
        .into_par_iter()
        .map(|(n, m, replicate)| {
            let config = spec.config_for(n, m, replicate);
            let outcome = run_until_parity(&config)?;
            Ok(SweepRecord {
                n,
                m,
                replicate,
                seed: config.seed,
                outcome,
            })
        })
        .collect::<Result<Vec<_>, ConfigError>>()?;
    Ok(SweepResult::from_records(records))
}

/// [`run_sweep`] on a dedicated pool of `workers` threads (0 = rayon's
/// default). The result does not depend on the worker count.
pub fn run_sweep_with_workers(spec: &SweepSpec, workers: usize) -> Result<SweepResult, ConfigError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ConfigError::new("sweep", "workers", e.to_string()))?;
    pool.install(|| run_sweep(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(kind: StrategyKind) -> SweepSpec {
        let mut spec = SweepSpec::new(vec![12], vec![2, 6], 2, kind);
        spec.template.max_ticks = 2_000;
        spec.master_seed = 3;
        spec
    }

    #[test]
    fn one_cell_one_record() {
        let mut spec = tiny(StrategyKind::Otft);
        spec.capacities = vec![4];
        spec.replicates = 1;
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.records.len(), 1);
        assert_eq!(result.cells.len(), 1);
        let r = result.records[0];
        assert_eq!((r.n, r.m, r.replicate), (12, 4, 0));
        assert_eq!(r.seed, spec.cell_seed(12, 4, 0));
    }

    #[test]
    fn grid_is_complete_and_clipped() {
        let mut spec = tiny(StrategyKind::Otft);
        spec.sizes = vec![10, 6];
        spec.capacities = vec![8, 2, 5];
        spec.template.max_ticks = 300;
        let result = run_sweep(&spec).unwrap();
        let keys: Vec<_> = result.records.iter().map(|r| (r.n, r.m, r.replicate)).collect();
        assert_eq!(
            keys,
            vec![
                (6, 2, 0), (6, 2, 1), (6, 5, 0), (6, 5, 1),
                (10, 2, 0), (10, 2, 1), (10, 5, 0), (10, 5, 1), (10, 8, 0), (10, 8, 1),
            ]
        );
        assert_eq!(result.cells.len(), 5);
    }

    #[test]
    fn same_spec_same_result() {
        let spec = tiny(StrategyKind::GossipTft);
        assert_eq!(run_sweep(&spec).unwrap(), run_sweep(&spec).unwrap());
    }

    #[test]
    fn worker_count_does_not_matter() {
        let spec = tiny(StrategyKind::Otft);
        assert_eq!(
            run_sweep_with_workers(&spec, 1).unwrap(),
            run_sweep_with_workers(&spec, 4).unwrap()
        );
    }

    #[test]
    fn aggregation_ignores_record_order() {
        let result = run_sweep(&tiny(StrategyKind::Otft)).unwrap();
        let mut shuffled = result.records.clone();
        shuffled.reverse();
        shuffled.swap(0, 2);
        assert_eq!(SweepResult::from_records(shuffled), result);
    }

    #[test]
    fn seeds_depend_on_every_coordinate() {
        let spec = tiny(StrategyKind::Otft);
        let base = spec.cell_seed(40, 5, 0);
        assert_ne!(base, spec.cell_seed(41, 5, 0));
        assert_ne!(base, spec.cell_seed(40, 6, 0));
        assert_ne!(base, spec.cell_seed(40, 5, 1));
        let gossip = SweepSpec { kind: StrategyKind::GossipTft, ..spec.clone() };
        assert_ne!(base, gossip.cell_seed(40, 5, 0));
    }

    #[test]
    fn exhausted_runs_stay_out_of_the_mean() {
        let record = |replicate, outcome| SweepRecord { n: 20, m: 5, replicate, seed: 0, outcome };
        let result = SweepResult::from_records(vec![
            record(0, ParityOutcome::Reached { tick: 300 }),
            record(1, ParityOutcome::Exhausted { max_ticks: 1000 }),
            record(2, ParityOutcome::Reached { tick: 500 }),
        ]);
        let cell = &result.cells[0];
        assert_eq!(cell.mean_ticks, Some(400.0));
        assert_eq!(cell.exhausted, 1);
        assert!((cell.exhausted_fraction() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(cell.median_ticks, 500.0);
    }

    #[test]
    fn bad_specs_name_their_key() {
        let mut spec = tiny(StrategyKind::Otft);
        spec.replicates = 0;
        assert_eq!(spec.validate().unwrap_err().key_path(), "[sweep].replicates");
        let mut spec = tiny(StrategyKind::Otft);
        spec.capacities = vec![50];
        assert_eq!(spec.validate().unwrap_err().key_path(), "[sweep].capacities");
        let mut spec = tiny(StrategyKind::Alld);
        spec.kind = StrategyKind::Alld;
        assert_eq!(spec.validate().unwrap_err().key_path(), "[world].strategy");
    }
}
