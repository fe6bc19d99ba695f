use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::{CapacityMinimum, SpeedupRow, SweepResult};
use crate::sim::FitnessSeries;

pub const TIMESERIES_HEADER: &str = "tick,strategy,mean_score,relative_fitness,encounters";
pub const CELLS_HEADER: &str = "n,m,replicate,seed,outcome,ticks";
pub const AGGREGATE_HEADER: &str = "n,m,mean_ticks,exhausted_fraction";
pub const MINIMA_HEADER: &str = "n,m_opt,t_min";
pub const SPEEDUP_HEADER: &str =
    "n,baseline,baseline_m,baseline_median,challenger,challenger_m,challenger_median,ratio,anomaly";

/// 17 significant digits, enough to read back the identical double.
/// Infinity is written `inf`; NaN and missing values are left blank.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

fn optional_int(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn timeseries_csv(series: &FitnessSeries) -> String {
    let mut out = format!("{TIMESERIES_HEADER}\n");
    for row in &series.rows {
        let shares = row.relative_fitness();
        let mut stats: Vec<_> = row.strategies.iter().collect();
        stats.sort_by_key(|s| s.kind.name());
        for s in stats {
            let share = shares.iter().find(|(k, _)| *k == s.kind).and_then(|(_, f)| *f);
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.tick,
                s.kind.name(),
                number(s.mean_score()),
                optional(share),
                s.encounters
            ));
        }
    }
    out
}

pub fn cells_csv(result: &SweepResult) -> String {
    let mut out = format!("{CELLS_HEADER}\n");
    for r in &result.records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n,
            r.m,
            r.replicate,
            r.seed,
            r.outcome.label(),
            r.outcome.ticks()
        ));
    }
    out
}

pub fn aggregate_csv(result: &SweepResult) -> String {
    let mut out = format!("{AGGREGATE_HEADER}\n");
    for c in &result.cells {
        out.push_str(&format!(
            "{},{},{},{}\n",
            c.n,
            c.m,
            optional(c.mean_ticks),
            number(c.exhausted_fraction())
        ));
    }
    out
}

pub fn minima_csv(minima: &[(usize, Option<CapacityMinimum>)]) -> String {
    let mut out = format!("{MINIMA_HEADER}\n");
    for (n, min) in minima {
        out.push_str(&format!(
            "{},{},{}\n",
            n,
            optional_int(min.map(|m| m.m_opt)),
            optional(min.map(|m| m.t_min))
        ));
    }
    out
}

pub fn speedup_csv(rows: &[SpeedupRow], baseline: &str, challenger: &str) -> String {
    let mut out = format!("{SPEEDUP_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            baseline,
            optional_int(r.baseline_m),
            number(r.baseline_median),
            challenger,
            optional_int(r.challenger_m),
            number(r.challenger_median),
            number(r.ratio),
            r.anomaly
        ));
    }
    out
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

/// Writes the timeseries of a run. An empty series is refused.
pub fn emit_timeseries(series: &FitnessSeries, path: &Path) -> Result<()> {
    if series.is_empty() {
        return Err(crate::error::ConfigError::new("world", "run_ticks", "nothing to write: the series is empty").into());
    }
    write_file(path, &timeseries_csv(series))
}

/// Reads `(n, m_opt)` pairs back from a minima table, skipping group sizes
/// without a minimum.
pub fn parse_minima_csv(text: &str, origin: &Path) -> Result<Vec<(usize, CapacityMinimum)>> {
    let syntax = |line: usize, reason: String| Error::Syntax {
        path: origin.to_path_buf(),
        line,
        reason,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == MINIMA_HEADER => {}
        other => {
            return Err(syntax(1, format!("expected header {MINIMA_HEADER:?}, got {:?}", other.map(|(_, h)| h))));
        }
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [n, m, t] = fields[..] else {
            return Err(syntax(i + 1, format!("expected 3 fields, got {}", fields.len())));
        };
        if m.is_empty() {
            continue;
        }
        let bad = |what: &str| syntax(i + 1, format!("bad {what}"));
        out.push((
            n.parse().map_err(|_| bad("n"))?,
            CapacityMinimum {
                m_opt: m.parse().map_err(|_| bad("m_opt"))?,
                t_min: t.parse().map_err(|_| bad("t_min"))?,
            },
        ));
    }
    Ok(out)
}
