use crate::error::ConfigError;
use crate::model::StrategyKind;
use crate::sim::WorldConfig;

use super::sweep::{run_sweep, SweepResult, SweepSpec};

/// Two reciprocator kinds raced against the same defectors. Both share one
/// template, so they differ only in kind and in the cost rate the template's
/// cost table charges that kind.
#[derive(Clone, Debug, PartialEq)]
pub struct SpeedupSpec {
    pub sizes: Vec<usize>,
    pub capacities: Vec<usize>,
    pub replicates: u64,
    pub template: WorldConfig,
    pub baseline: StrategyKind,
    pub challenger: StrategyKind,
    pub master_seed: u64,
}

impl SpeedupSpec {
    /// OTFT against GossipTFT.
    pub fn new(sizes: Vec<usize>, capacities: Vec<usize>, replicates: u64) -> Self {
        Self {
            sizes,
            capacities,
            replicates,
            template: WorldConfig::duel(2, StrategyKind::Otft, 1),
            baseline: StrategyKind::Otft,
            challenger: StrategyKind::GossipTft,
            master_seed: 0,
        }
    }

    pub fn sweep_for(&self, kind: StrategyKind) -> SweepSpec {
        SweepSpec {
            sizes: self.sizes.clone(),
            capacities: self.capacities.clone(),
            replicates: self.replicates,
            template: self.template.clone(),
            kind,
            master_seed: self.master_seed,
        }
    }
}

/// Per group size: each kind's best per-capacity median and their ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct SpeedupRow {
    pub n: usize,
    pub baseline_m: Option<usize>,
    pub baseline_median: f64,
    pub challenger_m: Option<usize>,
    pub challenger_median: f64,
    /// `baseline_median / challenger_median`: infinite when only the
    /// challenger reaches parity, NaN when neither does.
    pub ratio: f64,
    /// The challenger never reached parity here.
    pub anomaly: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpeedupReport {
    pub rows: Vec<SpeedupRow>,
    pub baseline: SweepResult,
    pub challenger: SweepResult,
}

pub fn speedup_comparison(spec: &SpeedupSpec) -> Result<SpeedupReport, ConfigError> {
    let baseline = run_sweep(&spec.sweep_for(spec.baseline))?;
    let challenger = run_sweep(&spec.sweep_for(spec.challenger))?;
    Ok(SpeedupReport {
        rows: speedup_rows(&baseline, &challenger),
        baseline,
        challenger,
    })
}

/// Rows for every group size present in both sweeps.
pub fn speedup_rows(baseline: &SweepResult, challenger: &SweepResult) -> Vec<SpeedupRow> {
    let theirs = challenger.sizes();
    baseline
        .sizes()
        .into_iter()
        .filter(|n| theirs.contains(n))
        .map(|n| {
            let (baseline_m, baseline_median) = baseline.best_median(n);
            let (challenger_m, challenger_median) = challenger.best_median(n);
            SpeedupRow {
                n,
                baseline_m,
                baseline_median,
                challenger_m,
                challenger_median,
                ratio: speedup_ratio(baseline_median, challenger_median),
                anomaly: !challenger_median.is_finite(),
            }
        })
        .collect()
}

pub fn speedup_ratio(baseline: f64, challenger: f64) -> f64 {
    match (baseline.is_finite(), challenger.is_finite()) {
        (true, true) => baseline / challenger,
        (false, true) => f64::INFINITY,
        (true, false) => 0.0,
        (false, false) => f64::NAN,
    }
}
