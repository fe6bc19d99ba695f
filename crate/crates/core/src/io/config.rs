use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{ConfigError, Error, Result};
use crate::experiments::{SpeedupSpec, SweepSpec, DEFAULT_CAPACITIES};
use crate::model::{CostParams, CostTable, DecayParams, PayoffMatrix, StrategyKind};
use crate::sim::{WorldConfig, DEFAULT_DENSITY, DEFAULT_HALF_LIFE, DEFAULT_MAX_TICKS, DEFAULT_PARITY_GUARD};
use crate::space::MobilityParams;

/// Environment variable consulted for the seed when neither the file nor a
/// flag sets one.
pub const SEED_ENV: &str = "RECIPROSIM_SEED";

/// Every tunable of the command-line tool, all defaults materialized.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub n: usize,
    pub strategy: StrategyKind,
    pub defectors: usize,
    pub payoff: PayoffMatrix,
    pub density: f64,
    pub max_ticks: u64,
    pub parity_guard: u64,
    /// Length of a `run`, in ticks.
    pub run_ticks: u64,
    pub seed: u64,

    pub capacity: usize,
    /// Infinite half-life means grudges never fade.
    pub half_life: f64,

    pub costs: CostTable,
    pub mobility: MobilityParams,

    pub sizes: Vec<usize>,
    pub capacities: Vec<usize>,
    pub replicates: u64,
    /// Sweep threads; 0 lets rayon decide.
    pub workers: usize,
    pub baseline: StrategyKind,
    pub challenger: StrategyKind,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            n: 40,
            strategy: StrategyKind::Otft,
            defectors: 20,
            payoff: PayoffMatrix::default(),
            density: DEFAULT_DENSITY,
            max_ticks: DEFAULT_MAX_TICKS,
            parity_guard: DEFAULT_PARITY_GUARD,
            run_ticks: 1_000,
            seed: 0,
            capacity: 10,
            half_life: DEFAULT_HALF_LIFE,
            costs: CostTable::default(),
            mobility: MobilityParams::default(),
            sizes: vec![40, 60, 80, 100, 120, 140],
            capacities: DEFAULT_CAPACITIES.to_vec(),
            replicates: 20,
            workers: 0,
            baseline: StrategyKind::Otft,
            challenger: StrategyKind::GossipTft,
        }
    }
}

const KEYS: &[(&str, &[&str])] = &[
    ("manifest", &["version", "timestamp", "command"]),
    (
        "world",
        &[
            "n", "strategy", "defectors", "temptation", "reward", "punishment", "sucker", "density", "max_ticks",
            "parity_guard", "run_ticks", "seed",
        ],
    ),
    ("memory", &["capacity", "half_life"]),
    ("costs", &["k_otft", "k_gossip"]),
    ("mobility", &["step_length", "heading_jitter", "interaction_radius", "separation_cooldown"]),
    ("sweep", &["sizes", "capacities", "replicates", "workers", "baseline", "challenger"]),
];

fn known(section: &str, key: &str) -> bool {
    KEYS.iter().any(|(s, keys)| *s == section && keys.contains(&key))
}

fn value<T: FromStr>(section: &str, key: &str, raw: &str) -> std::result::Result<T, ConfigError> {
    raw.parse()
        .map_err(|_| ConfigError::new(section, key, format!("cannot parse {raw:?}")))
}

fn list(section: &str, key: &str, raw: &str) -> std::result::Result<Vec<usize>, ConfigError> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| value(section, key, s))
        .collect()
}

fn join(items: &[usize]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Collects `section.key = value` assignments in order; later ones win.
#[derive(Debug, Default)]
struct Builder {
    settings: Settings,
    defectors: Option<usize>,
}

impl Builder {
    fn set(&mut self, section: &str, key: &str, raw: &str) -> std::result::Result<(), ConfigError> {
        if !known(section, key) {
            return Err(ConfigError::new(section, key, "unknown key"));
        }
        let raw = raw.trim();
        let s = &mut self.settings;
        match (section, key) {
            // provenance only; the settings below fully determine a run
            ("manifest", _) => {}
            ("world", "n") => s.n = value(section, key, raw)?,
            ("world", "strategy") => s.strategy = value(section, key, raw)?,
            ("world", "defectors") => self.defectors = Some(value(section, key, raw)?),
            ("world", "temptation") => s.payoff.temptation = value(section, key, raw)?,
            ("world", "reward") => s.payoff.reward = value(section, key, raw)?,
            ("world", "punishment") => s.payoff.punishment = value(section, key, raw)?,
            ("world", "sucker") => s.payoff.sucker = value(section, key, raw)?,
            ("world", "density") => s.density = value(section, key, raw)?,
            ("world", "max_ticks") => s.max_ticks = value(section, key, raw)?,
            ("world", "parity_guard") => s.parity_guard = value(section, key, raw)?,
            ("world", "run_ticks") => s.run_ticks = value(section, key, raw)?,
            ("world", "seed") => s.seed = value(section, key, raw)?,
            ("memory", "capacity") => s.capacity = value(section, key, raw)?,
            ("memory", "half_life") => s.half_life = value(section, key, raw)?,
            ("costs", "k_otft") => s.costs.otft = CostParams { k: value(section, key, raw)? },
            ("costs", "k_gossip") => s.costs.gossip = CostParams { k: value(section, key, raw)? },
            ("mobility", "step_length") => s.mobility.step_length = value(section, key, raw)?,
            ("mobility", "heading_jitter") => s.mobility.heading_jitter = value(section, key, raw)?,
            ("mobility", "interaction_radius") => s.mobility.interaction_radius = value(section, key, raw)?,
            ("mobility", "separation_cooldown") => s.mobility.separation_cooldown = value(section, key, raw)?,
            ("sweep", "sizes") => s.sizes = list(section, key, raw)?,
            ("sweep", "capacities") => s.capacities = list(section, key, raw)?,
            ("sweep", "replicates") => s.replicates = value(section, key, raw)?,
            ("sweep", "workers") => s.workers = value(section, key, raw)?,
            ("sweep", "baseline") => s.baseline = value(section, key, raw)?,
            ("sweep", "challenger") => s.challenger = value(section, key, raw)?,
            _ => unreachable!("key table and match disagree on [{section}].{key}"),
        }
        Ok(())
    }

    fn finish(mut self) -> std::result::Result<Settings, ConfigError> {
        let s = &mut self.settings;
        s.defectors = self.defectors.unwrap_or(s.n / 2);
        s.validate()?;
        Ok(self.settings)
    }
}

/// Splits a `section.key=value` override.
pub fn parse_override(text: &str) -> std::result::Result<(String, String, String), ConfigError> {
    let bad = || ConfigError::new("flags", "set", format!("expected section.key=value, got {text:?}"));
    let (path, raw) = text.split_once('=').ok_or_else(bad)?;
    let (section, key) = path.trim().split_once('.').ok_or_else(bad)?;
    Ok((section.to_string(), key.to_string(), raw.to_string()))
}

/// Reads settings from key=value text with `[section]` headers. `#` starts
/// a comment. `origin` only labels syntax errors.
pub fn parse_settings_text(text: &str, origin: &Path) -> Result<Settings> {
    let mut builder = Builder::default();
    apply_text(&mut builder, text, origin)?;
    Ok(builder.finish()?)
}

fn apply_text(builder: &mut Builder, text: &str, origin: &Path) -> Result<()> {
    let mut section: Option<String> = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |reason: String| Error::Syntax {
            path: origin.to_path_buf(),
            line: i + 1,
            reason,
        };
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| syntax(format!("unterminated section header {line:?}")))?
                .trim();
            if !KEYS.iter().any(|(s, _)| *s == name) {
                return Err(ConfigError::new(name, "*", "unknown section").into());
            }
            section = Some(name.to_string());
            continue;
        }
        let (key, raw) = line
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected key = value, got {line:?}")))?;
        let section = section
            .as_deref()
            .ok_or_else(|| syntax(format!("{:?} appears before any [section]", key.trim())))?;
        builder.set(section, key.trim(), raw)?;
    }
    Ok(())
}

/// Resolves settings from, in rising precedence: built-in defaults, the
/// seed in `env_seed`, the optional config file, then `overrides`
/// (`section`, `key`, `value`).
pub fn parse_config(
    path: Option<&Path>,
    overrides: &[(String, String, String)],
    env_seed: Option<&str>,
) -> Result<Settings> {
    let mut builder = Builder::default();
    if let Some(seed) = env_seed {
        let seed = seed
            .trim()
            .parse()
            .map_err(|_| ConfigError::new("world", "seed", format!("{SEED_ENV}={seed:?} is not a seed")))?;
        builder.settings.seed = seed;
    }
    if let Some(path) = path {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        apply_text(&mut builder, &text, path)?;
    }
    for (section, key, raw) in overrides {
        builder.set(section, key, raw)?;
    }
    Ok(builder.finish()?)
}

impl Settings {
    pub fn validate(&self) -> std::result::Result<(), ConfigError> {
        if self.defectors > self.n {
            return Err(ConfigError::new(
                "world",
                "defectors",
                format!("{} defectors do not fit a population of {}", self.defectors, self.n),
            ));
        }
        if self.half_life.is_nan() || self.half_life <= 0.0 {
            return Err(ConfigError::new(
                "memory",
                "half_life",
                format!("half-life must be positive, got {}", self.half_life),
            ));
        }
        if !self.strategy.has_memory() && self.defectors < self.n {
            return Err(ConfigError::new("world", "strategy", "the second group must carry a memory"));
        }
        for (key, kind) in [("baseline", self.baseline), ("challenger", self.challenger)] {
            if !kind.has_memory() {
                return Err(ConfigError::new("sweep", key, "must be a memory-bearing strategy"));
            }
        }
        self.world().validate()?;
        self.sweep().validate()?;
        Ok(())
    }

    pub fn decay(&self) -> DecayParams {
        if self.half_life.is_infinite() {
            DecayParams::Never
        } else {
            DecayParams::HalfLife(self.half_life)
        }
    }

    pub fn world(&self) -> WorldConfig {
        let mut config = WorldConfig::duel(self.n, self.strategy, self.capacity);
        config.composition = vec![(StrategyKind::Alld, self.defectors), (self.strategy, self.n - self.defectors)];
        config.decay = self.decay();
        config.costs = self.costs;
        config.payoff = self.payoff;
        config.density = self.density;
        config.mobility = self.mobility;
        config.max_ticks = self.max_ticks;
        config.parity_guard = self.parity_guard;
        config.seed = self.seed;
        config
    }

    pub fn sweep(&self) -> SweepSpec {
        SweepSpec {
            sizes: self.sizes.clone(),
            capacities: self.capacities.clone(),
            replicates: self.replicates,
            template: self.world(),
            kind: self.strategy,
            master_seed: self.seed,
        }
    }

    pub fn speedup(&self) -> SpeedupSpec {
        SpeedupSpec {
            sizes: self.sizes.clone(),
            capacities: self.capacities.clone(),
            replicates: self.replicates,
            template: self.world(),
            baseline: self.baseline,
            challenger: self.challenger,
            master_seed: self.seed,
        }
    }

    /// The settings as config text, every key present.
    pub fn to_config_text(&self) -> String {
        let mut out = String::new();
        let s = self;
        let mut put = |line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        put("[world]".into());
        put(format!("n = {}", s.n));
        put(format!("strategy = {}", s.strategy));
        put(format!("defectors = {}", s.defectors));
        put(format!("temptation = {}", s.payoff.temptation));
        put(format!("reward = {}", s.payoff.reward));
        put(format!("punishment = {}", s.payoff.punishment));
        put(format!("sucker = {}", s.payoff.sucker));
        put(format!("density = {}", s.density));
        put(format!("max_ticks = {}", s.max_ticks));
        put(format!("parity_guard = {}", s.parity_guard));
        put(format!("run_ticks = {}", s.run_ticks));
        put(format!("seed = {}", s.seed));
        put(String::new());
        put("[memory]".into());
        put(format!("capacity = {}", s.capacity));
        put(format!("half_life = {}", s.half_life));
        put(String::new());
        put("[costs]".into());
        put(format!("k_otft = {}", s.costs.otft.k));
        put(format!("k_gossip = {}", s.costs.gossip.k));
        put(String::new());
        put("[mobility]".into());
        put(format!("step_length = {}", s.mobility.step_length));
        put("# radians".into());
        put(format!("heading_jitter = {}", s.mobility.heading_jitter));
        put(format!("interaction_radius = {}", s.mobility.interaction_radius));
        put(format!("separation_cooldown = {}", s.mobility.separation_cooldown));
        put(String::new());
        put("[sweep]".into());
        put(format!("sizes = {}", join(&s.sizes)));
        put(format!("capacities = {}", join(&s.capacities)));
        put(format!("replicates = {}", s.replicates));
        put(format!("workers = {}", s.workers));
        put(format!("baseline = {}", s.baseline));
        put(format!("challenger = {}", s.challenger));
        out
    }
}

/// Resolved settings plus provenance, written next to every output. Fed
/// back in as a config file it reproduces the run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunManifest {
    pub settings: Settings,
    pub command: String,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(settings: Settings, command: &str) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Self {
            settings,
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
        }
    }

    pub fn seed(&self) -> u64 {
        self.settings.seed
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[manifest]");
        let _ = writeln!(out, "version = {}", self.version);
        let _ = writeln!(out, "timestamp = {}", self.timestamp);
        let _ = writeln!(out, "command = {}", self.command);
        out.push('\n');
        out.push_str(&self.settings.to_config_text());
        out
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let settings = parse_settings_text(text, origin)?;
        let field = |name: &str| {
            text.lines()
                .filter_map(|l| l.split_once('='))
                .find(|(k, _)| k.trim() == name)
                .map(|(_, v)| v.trim().to_string())
        };
        let missing = |key: &str| ConfigError::new("manifest", key, "missing");
        let timestamp = field("timestamp").ok_or_else(|| missing("timestamp"))?;
        Ok(Self {
            settings,
            command: field("command").ok_or_else(|| missing("command"))?,
            version: field("version").ok_or_else(|| missing("version"))?,
            timestamp: value("manifest", "timestamp", &timestamp)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Settings> {
        parse_settings_text(text, Path::new("test.ini"))
    }

    fn key_of(err: Error) -> String {
        match err {
            Error::Config(e) => e.key_path(),
            other => panic!("expected a config error, got {other}"),
        }
    }

    #[test]
    fn empty_file_gives_defaults() {
        let s = parse("").unwrap();
        assert_eq!(s, Settings::default());
        assert_eq!((s.payoff.temptation, s.payoff.reward, s.payoff.punishment, s.payoff.sucker), (5.0, 3.0, 1.0, 0.0));
        assert_eq!(s.half_life, 800.0);
        assert_eq!((s.costs.otft.k, s.costs.gossip.k), (5e-3, 8e-3));
        assert_eq!(s.density, DEFAULT_DENSITY);
        assert_eq!(s.max_ticks, 200_000);
    }

    #[test]
    fn zero_half_life_names_the_key() {
        let err = parse("[memory]\nhalf_life = 0\n").unwrap_err();
        assert_eq!(key_of(err), "[memory].half_life");
    }

    #[test]
    fn typo_is_rejected() {
        let err = parse("[memory]\nhalflife = 400\n").unwrap_err();
        assert_eq!(key_of(err), "[memory].halflife");
        let err = parse("[wrld]\nn = 4\n").unwrap_err();
        assert!(matches!(err, Error::Config(ref e) if e.section == "wrld"));
    }

    #[test]
    fn malformed_value_names_the_key() {
        assert_eq!(key_of(parse("[world]\nn = forty\n").unwrap_err()), "[world].n");
        assert_eq!(key_of(parse("[memory]\ncapacity = 50\n").unwrap_err()), "[memory].capacity");
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        match parse("[world]\n\nn 40\n").unwrap_err() {
            Error::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
        assert!(matches!(parse("n = 40\n").unwrap_err(), Error::Syntax { line: 1, .. }));
    }

    #[test]
    fn defectors_default_to_half_of_n() {
        let s = parse("[world]\nn = 61\n[memory]\ncapacity = 5\n").unwrap();
        assert_eq!(s.defectors, 30);
        let s = parse("[world]\nn = 61\ndefectors = 10\n").unwrap();
        assert_eq!(s.world().count_of(StrategyKind::Otft), 51);
    }

    #[test]
    fn infinite_half_life_disables_decay() {
        let s = parse("[memory]\nhalf_life = inf\n").unwrap();
        assert_eq!(s.world().decay, DecayParams::Never);
    }

    #[test]
    fn precedence_flag_over_file_over_env() {
        let dir = std::env::temp_dir().join(format!("reciprosim-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.ini");
        std::fs::write(&path, "[world]\nn = 40\n").unwrap();

        let flag = [("world".to_string(), "n".to_string(), "140".to_string())];
        assert_eq!(parse_config(Some(&path), &flag, None).unwrap().n, 140);
        assert_eq!(parse_config(Some(&path), &[], Some("9")).unwrap().seed, 9);

        std::fs::write(&path, "[world]\nseed = 4\n").unwrap();
        assert_eq!(parse_config(Some(&path), &[], Some("9")).unwrap().seed, 4);
        let flag = [("world".to_string(), "seed".to_string(), "5".to_string())];
        assert_eq!(parse_config(Some(&path), &flag, Some("9")).unwrap().seed, 5);

        assert!(matches!(parse_config(Some(&dir.join("missing.ini")), &[], None), Err(Error::Io { .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn overrides_parse() {
        assert_eq!(
            parse_override("memory.capacity=12").unwrap(),
            ("memory".into(), "capacity".into(), "12".into())
        );
        assert!(parse_override("capacity=12").is_err());
    }

    #[test]
    fn manifest_round_trip() {
        let mut s = Settings::default();
        s.n = 60;
        s.defectors = 25;
        s.seed = u64::MAX;
        s.density = 0.1 + 0.2;
        s.half_life = f64::INFINITY;
        s.mobility.heading_jitter = 50f64.to_radians();
        s.sizes = vec![40, 80];
        let manifest = RunManifest::new(s, "sweep");
        let text = manifest.to_text();
        let back = RunManifest::parse(&text, Path::new("m.ini")).unwrap();
        assert_eq!(back, manifest);
        assert_eq!(back.settings.density.to_bits(), (0.1f64 + 0.2).to_bits());
    }
}
