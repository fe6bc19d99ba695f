use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use super::config::{parse_config, parse_override, RunManifest, Settings};
use super::csv::{
    aggregate_csv, cells_csv, emit_timeseries, minima_csv, parse_minima_csv, speedup_csv, write_file,
};
use crate::error::{Error, Result};
use crate::experiments::{optimal_capacity_regression, run_sweep_with_workers, speedup_rows, SweepRecord, SweepResult};
use crate::sim::{run_until_parity, World};

#[derive(Debug, Parser)]
#[command(name = "reciprosim", version, about = "Memory-bounded reciprocity simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one world and write its per-tick fitness timeseries.
    Run(RunArgs),
    /// Measure the tick at which the reciprocators catch up.
    Parity(Common),
    /// Parity over a grid of group sizes and capacities.
    Sweep(Common),
    /// Fit optimal capacity against group size from a minima table.
    Regress(RegressArgs),
    /// Compare the baseline and challenger strategies' best parity times.
    Speedup(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Config file (key = value lines under [world], [memory], [costs],
    /// [mobility], [sweep]); a manifest works too.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override any key, e.g. --set memory.half_life=400
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Population size
    #[arg(long)]
    n: Option<String>,
    /// Memory capacity
    #[arg(long)]
    m: Option<String>,
    /// Reciprocator strategy: otft or gossip
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    workers: Option<String>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    ticks: Option<String>,
}

#[derive(Debug, Args)]
struct RegressArgs {
    /// Minima table written by `sweep`
    #[arg(long)]
    minima: PathBuf,
}

impl Common {
    fn settings(&self, extra: &[(&str, &str, &Option<String>)], env_seed: Option<&str>) -> Result<Settings> {
        let mut overrides = Vec::new();
        for text in &self.set {
            overrides.push(parse_override(text)?);
        }
        let flags = [
            ("world", "seed", &self.seed),
            ("world", "n", &self.n),
            ("memory", "capacity", &self.m),
            ("world", "strategy", &self.strategy),
            ("sweep", "workers", &self.workers),
        ];
        for (section, key, flag) in flags.iter().chain(extra) {
            if let Some(v) = flag {
                overrides.push((section.to_string(), key.to_string(), v.clone()));
            }
        }
        parse_config(self.config.as_deref(), &overrides, env_seed)
    }
}

/// Exit status for an error: 2 for file system trouble, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => 2,
        _ => 1,
    }
}

/// Runs the tool on `argv` (program name first) and returns the exit
/// status. `env_seed` is the value of the seed environment variable.
pub fn cli_dispatch<I, T>(argv: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(cli.command, env_seed, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, env_seed: Option<&str>, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Run(args) => {
            let settings = args.common.settings(&[("world", "run_ticks", &args.ticks)], env_seed)?;
            let mut world = World::new(&settings.world())?;
            let series = world.run(settings.run_ticks);
            let path = args.common.out.join("timeseries.csv");
            emit_timeseries(&series, &path)?;
            write_manifest(&args.common.out, &settings, "run")?;
            say(out, &format!("wrote {} ticks to {}", series.len(), path.display()))
        }
        Command::Parity(common) => {
            let settings = common.settings(&[], env_seed)?;
            let config = settings.world();
            let outcome = run_until_parity(&config)?;
            let record = SweepRecord {
                n: settings.n,
                m: settings.capacity,
                replicate: 0,
                seed: config.seed,
                outcome,
            };
            write_file(&common.out.join("parity.csv"), &cells_csv(&SweepResult::from_records(vec![record])))?;
            write_manifest(&common.out, &settings, "parity")?;
            say(
                out,
                &format!(
                    "n={} m={} strategy={} seed={} outcome={} ticks={}",
                    settings.n,
                    settings.capacity,
                    settings.strategy,
                    config.seed,
                    outcome.label(),
                    outcome.ticks()
                ),
            )
        }
        Command::Sweep(common) => {
            let settings = common.settings(&[], env_seed)?;
            let result = run_sweep_with_workers(&settings.sweep(), settings.workers)?;
            write_file(&common.out.join("cells.csv"), &cells_csv(&result))?;
            write_file(&common.out.join("aggregate.csv"), &aggregate_csv(&result))?;
            write_file(&common.out.join("minima.csv"), &minima_csv(&result.minima()))?;
            write_manifest(&common.out, &settings, "sweep")?;
            say(
                out,
                &format!("{} runs over {} cells written to {}", result.records.len(), result.cells.len(), common.out.display()),
            )
        }
        Command::Regress(args) => {
            let text = std::fs::read_to_string(&args.minima).map_err(|e| Error::io(&args.minima, e))?;
            let minima = parse_minima_csv(&text, &args.minima)?;
            let points: Vec<(f64, f64)> = minima.iter().map(|(n, m)| (*n as f64, m.m_opt as f64)).collect();
            let fit = optimal_capacity_regression(&points)?;
            say(
                out,
                &format!("slope={} intercept={} r={} samples={}", fit.slope, fit.intercept, fit.r, fit.samples),
            )
        }
        Command::Speedup(common) => {
            let settings = common.settings(&[], env_seed)?;
            let spec = settings.speedup();
            let baseline = run_sweep_with_workers(&spec.sweep_for(spec.baseline), settings.workers)?;
            let challenger = run_sweep_with_workers(&spec.sweep_for(spec.challenger), settings.workers)?;
            let rows = speedup_rows(&baseline, &challenger);
            let csv = speedup_csv(&rows, spec.baseline.name(), spec.challenger.name());
            write_file(&common.out.join("speedup.csv"), &csv)?;
            write_manifest(&common.out, &settings, "speedup")?;
            for r in &rows {
                say(out, &format!("n={} ratio={}", r.n, r.ratio))?;
            }
            Ok(())
        }
    }
}

fn say(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(|e| Error::io("<stdout>", e))
}

fn write_manifest(dir: &Path, settings: &Settings, command: &str) -> Result<()> {
    let manifest = RunManifest::new(settings.clone(), command);
    write_file(&dir.join("manifest.ini"), &manifest.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dispatch(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("reciprosim").chain(args.iter().copied());
        let code = cli_dispatch(argv, None, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_subcommand_prints_usage() {
        let (code, _, err) = dispatch(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(err.contains("Usage"), "{err}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = dispatch(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("sweep"));
    }

    #[test]
    fn bad_key_is_a_config_error() {
        let (code, _, err) = dispatch(&["parity", "--set", "memory.halflife=3"]);
        assert_eq!(code, 1);
        assert!(err.contains("[memory].halflife"), "{err}");
        let (code, _, err) = dispatch(&["parity", "--n", "abc"]);
        assert_eq!(code, 1);
        assert!(err.contains("[world].n"), "{err}");
    }

    #[test]
    fn missing_minima_file_is_an_io_error() {
        let (code, _, _) = dispatch(&["regress", "--minima", "/nonexistent/minima.csv"]);
        assert_eq!(code, 2);
    }
}
