//! Layered configuration: built-in defaults, then a TOML file, then the
//! worker-count environment variable, then command-line `key=value` overrides.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::game::{GameParams, MemoryMode};
use crate::meanfield::DEFAULT_DT;
use crate::netgen::{NetworkModel, NetworkSpec};
use crate::sweep::{COARSE_STEP, DEFAULT_RUNS_PER_POINT, FINE_STEP};

/// Environment variable overriding `execution.worker_count`.
pub const WORKERS_ENV: &str = "LURKER_WORKERS";

/// Prefix of the comment lines that embed the resolved config in artifacts.
pub const CONFIG_LINE_PREFIX: &str = "# config: ";

pub const DESK_MAX_STEPS: u64 = 10_000_000;
pub const LONG_MAX_STEPS: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    GenerateNetwork,
    Metrics,
    Simulate,
    Meanfield,
    Sweep,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::GenerateNetwork => "generate-network",
            Command::Metrics => "metrics",
            Command::Simulate => "simulate",
            Command::Meanfield => "meanfield",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Execution {
    pub init_rho_c: f64,
    pub max_steps: u64,
    pub runs: usize,
    pub master_seed: u64,
    pub output_path: PathBuf,
    pub sample_stride: Option<u64>,
    pub worker_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanfieldSettings {
    pub t_end: f64,
    pub dt: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSettings {
    pub topologies: Vec<NetworkModel>,
    pub memory_modes: Vec<MemoryMode>,
    pub nu_grid: Vec<f64>,
    /// Refinement step; `None` keeps the grid as given.
    pub fine_step: Option<f64>,
    pub k_values: Vec<Option<u32>>,
    pub runs_per_point: usize,
}

/// Fully resolved configuration for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub network: NetworkSpec,
    /// `nu` is `None` until given; only `simulate` requires it.
    pub nu: Option<f64>,
    pub game: GameParams,
    pub execution: Execution,
    pub meanfield: MeanfieldSettings,
    pub sweep: SweepSettings,
}

const KNOWN_KEYS: &[(&str, &[&str])] = &[
    ("network", &["model", "n", "mean_degree", "beta", "m", "seed"]),
    ("game", &["r", "nu", "k_noise", "vc", "prize_period", "memory", "cutoff"]),
    (
        "execution",
        &["init_rho_c", "max_steps", "runs", "master_seed", "output_path", "sample_stride", "worker_count"],
    ),
    ("meanfield", &["t_end", "dt"]),
    ("sweep", &["topologies", "memory_modes", "nu_grid", "nu_step", "fine_step", "k_values", "runs_per_point"]),
];

/// Extracts a config embedded in an artifact's `# config: ` comment lines,
/// or returns the text unchanged when it has none.
pub fn strip_embedded(text: &str) -> String {
    let embedded: Vec<&str> = text.lines().filter_map(|l| l.strip_prefix(CONFIG_LINE_PREFIX)).collect();
    if embedded.is_empty() {
        text.to_string()
    } else {
        embedded.join("\n")
    }
}

/// Parses `value` as a TOML value, falling back to a bare string.
fn parse_override_value(raw: &str) -> Value {
    let wrapped = format!("v = {raw}");
    match wrapped.parse::<Table>() {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| Value::String(raw.to_string())),
        Err(_) => Value::String(raw.to_string()),
    }
}

fn apply_override(table: &mut Table, key: &str, raw: &str) -> Result<()> {
    let (section, field) = key
        .split_once('.')
        .ok_or_else(|| Error::config(key, "override keys must look like `section.key`"))?;
    let entry = table.entry(section.to_string()).or_insert_with(|| Value::Table(Table::new()));
    let Value::Table(sub) = entry else {
        return Err(Error::config(section, "must be a table"));
    };
    sub.insert(field.to_string(), parse_override_value(raw));
    Ok(())
}

fn check_known(table: &Table) -> Result<()> {
    for (section, value) in table {
        if section == "command" {
            continue;
        }
        let Some((_, fields)) = KNOWN_KEYS.iter().find(|(s, _)| s == section) else {
            return Err(Error::config(section, "unknown section"));
        };
        let Value::Table(sub) = value else {
            return Err(Error::config(section, "must be a table"));
        };
        for key in sub.keys() {
            if !fields.contains(&key.as_str()) {
                return Err(Error::config(format!("{section}.{key}"), "unknown key"));
            }
        }
    }
    Ok(())
}

/// Typed view over one section with key-aware diagnostics.
struct Section<'a> {
    name: &'static str,
    table: Option<&'a Table>,
}

impl<'a> Section<'a> {
    fn of(root: &'a Table, name: &'static str) -> Self {
        Section { name, table: root.get(name).and_then(Value::as_table) }
    }

    fn key(&self, key: &str) -> String {
        format!("{}.{}", self.name, key)
    }

    fn raw(&self, key: &str) -> Option<&'a Value> {
        self.table.and_then(|t| t.get(key))
    }

    fn float(&self, key: &str) -> Result<Option<f64>> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Float(f)) => Ok(Some(*f)),
            Some(Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(other) => Err(Error::config(self.key(key), format!("expected a number, got `{other}`"))),
        }
    }

    fn uint(&self, key: &str) -> Result<Option<u64>> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
            Some(other) => Err(Error::config(self.key(key), format!("expected a non-negative integer, got `{other}`"))),
        }
    }

    fn string(&self, key: &str) -> Result<Option<&'a str>> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.as_str())),
            Some(other) => Err(Error::config(self.key(key), format!("expected a string, got `{other}`"))),
        }
    }

    fn array(&self, key: &str) -> Result<Option<&'a Vec<Value>>> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Array(a)) => Ok(Some(a)),
            Some(other) => Err(Error::config(self.key(key), format!("expected an array, got `{other}`"))),
        }
    }
}

fn parse_memory(key: &str, s: &str) -> Result<MemoryMode> {
    match s {
        "memoryless" => Ok(MemoryMode::Memoryless),
        "memory-aware" | "memory_aware" | "aware" => Ok(MemoryMode::MemoryAware),
        _ => Err(Error::config(key, format!("expected `memoryless` or `memory-aware`, got `{s}`"))),
    }
}

/// `ws:<beta>`, `ba` or `complete`; WS degree and BA `m` come from `[network]`.
fn parse_topology(key: &str, s: &str, mean_degree: usize, m: usize) -> Result<NetworkModel> {
    let lower = s.to_ascii_lowercase();
    match lower.split_once(':') {
        Some(("ws", beta)) => {
            let beta: f64 = beta
                .parse()
                .map_err(|_| Error::config(key, format!("bad beta in `{s}`")))?;
            Ok(NetworkModel::Ws { mean_degree, beta })
        }
        Some(("ba", m)) => {
            let m = m.parse().map_err(|_| Error::config(key, format!("bad m in `{s}`")))?;
            Ok(NetworkModel::Ba { m })
        }
        None if lower == "ba" => Ok(NetworkModel::Ba { m }),
        None if lower == "complete" => Ok(NetworkModel::Complete),
        _ => Err(Error::config(key, format!("expected `ws:<beta>`, `ba[:m]` or `complete`, got `{s}`"))),
    }
}

fn topology_string(model: &NetworkModel) -> String {
    match model {
        NetworkModel::Ws { beta, .. } => format!("ws:{beta:?}"),
        NetworkModel::Ba { m } => format!("ba:{m}"),
        NetworkModel::Complete => "complete".into(),
    }
}

fn seed_value(key: &str, v: Option<u64>) -> Result<u64> {
    let seed = v.unwrap_or(0);
    if seed > i64::MAX as u64 {
        return Err(Error::config(key, "seed must be at most 2^63 - 1"));
    }
    Ok(seed)
}

/// Builds a validated [`RunConfig`]. `file` is TOML (or an artifact with an
/// embedded config), `overrides` are `section.key=value` pairs applied last,
/// `env_workers` is the value of [`WORKERS_ENV`] if set.
pub fn parse_config(
    command: Command,
    file: Option<&str>,
    overrides: &[(String, String)],
    env_workers: Option<&str>,
) -> Result<RunConfig> {
    let mut table: Table = match file {
        Some(text) => strip_embedded(text)
            .parse::<Table>()
            .map_err(|e| Error::Parse(e.to_string().lines().next().unwrap_or("bad TOML").to_string()))?,
        None => Table::new(),
    };
    if let Some(w) = env_workers {
        apply_override(&mut table, "execution.worker_count", w)?;
    }
    for (k, v) in overrides {
        apply_override(&mut table, k, v)?;
    }
    check_known(&table)?;

    // [network]
    let net = Section::of(&table, "network");
    let n = net.uint("n")?.unwrap_or(5000) as usize;
    let mean_degree = net.uint("mean_degree")?.unwrap_or(4) as usize;
    let beta = net.float("beta")?.unwrap_or(0.0);
    let m = net.uint("m")?.map_or(mean_degree / 2, |m| m as usize);
    let model = match net.string("model")?.unwrap_or("ws") {
        "ws" => NetworkModel::Ws { mean_degree, beta },
        "ba" => NetworkModel::Ba { m },
        "complete" => NetworkModel::Complete,
        other => return Err(Error::config("network.model", format!("expected ws, ba or complete, got `{other}`"))),
    };
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::config("network.beta", "must lie in [0,1]"));
    }
    let network = NetworkSpec { model, n, seed: seed_value("network.seed", net.uint("seed")?)? };
    network.validate().map_err(|e| Error::config("network", e.to_string()))?;

    // [game]
    let g = Section::of(&table, "game");
    let defaults = GameParams::default();
    let nu = g.float("nu")?;
    if let Some(nu) = nu {
        if !(nu > 0.0 && nu <= 1.0) {
            return Err(Error::config("game.nu", format!("must lie in (0,1], got {nu}")));
        }
    }
    let prize_period = match g.raw("prize_period") {
        None => None,
        Some(Value::String(s)) if s == "none" => None,
        Some(Value::Integer(k)) if *k >= 1 && *k <= u32::MAX as i64 => Some(*k as u32),
        Some(other) => return Err(Error::config("game.prize_period", format!("must be an integer >= 1 or \"none\", got `{other}`"))),
    };
    let game = GameParams {
        r: g.float("r")?.unwrap_or(defaults.r),
        nu: nu.unwrap_or(defaults.nu),
        k_noise: g.float("k_noise")?.unwrap_or(defaults.k_noise),
        vc: g.float("vc")?.unwrap_or(defaults.vc),
        prize_period,
        memory: match g.string("memory")? {
            Some(s) => parse_memory("game.memory", s)?,
            None => defaults.memory,
        },
        cutoff: g.float("cutoff")?.unwrap_or(defaults.cutoff),
    };
    for (key, v) in [("game.r", game.r), ("game.k_noise", game.k_noise), ("game.vc", game.vc), ("game.cutoff", game.cutoff)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::config(key, format!("must be finite and > 0, got {v}")));
        }
    }

    // [execution]
    let ex = Section::of(&table, "execution");
    let init_rho_c = ex.float("init_rho_c")?.unwrap_or(0.5);
    if !(0.0..=1.0).contains(&init_rho_c) {
        return Err(Error::config("execution.init_rho_c", format!("must lie in [0,1], got {init_rho_c}")));
    }
    let max_steps = ex.uint("max_steps")?.unwrap_or(DESK_MAX_STEPS);
    if max_steps < 1 {
        return Err(Error::config("execution.max_steps", "must be >= 1"));
    }
    let runs = ex.uint("runs")?.unwrap_or(1) as usize;
    if runs < 1 {
        return Err(Error::config("execution.runs", "must be >= 1"));
    }
    let sample_stride = ex.uint("sample_stride")?;
    if sample_stride == Some(0) {
        return Err(Error::config("execution.sample_stride", "must be >= 1"));
    }
    let worker_count = ex.uint("worker_count")?.map(|w| w as usize);
    if worker_count == Some(0) {
        return Err(Error::config("execution.worker_count", "must be >= 1"));
    }
    let execution = Execution {
        init_rho_c,
        max_steps,
        runs,
        master_seed: seed_value("execution.master_seed", ex.uint("master_seed")?)?,
        output_path: PathBuf::from(ex.string("output_path")?.unwrap_or("out")),
        sample_stride,
        worker_count,
    };

    // [meanfield]
    let mf = Section::of(&table, "meanfield");
    let meanfield = MeanfieldSettings {
        t_end: mf.float("t_end")?.unwrap_or(50.0),
        dt: mf.float("dt")?.unwrap_or(DEFAULT_DT),
    };
    if !(meanfield.t_end > 0.0) {
        return Err(Error::config("meanfield.t_end", "must be > 0"));
    }
    if !(meanfield.dt > 0.0) {
        return Err(Error::config("meanfield.dt", "must be > 0"));
    }

    // [sweep]
    let sw = Section::of(&table, "sweep");
    let topologies = match sw.array("topologies")? {
        None => vec![network.model],
        Some(items) => items
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_topology("sweep.topologies", s, mean_degree, m),
                other => Err(Error::config("sweep.topologies", format!("expected strings, got `{other}`"))),
            })
            .collect::<Result<_>>()?,
    };
    for t in &topologies {
        NetworkSpec { model: *t, n, seed: 0 }
            .validate()
            .map_err(|e| Error::config("sweep.topologies", e.to_string()))?;
    }
    let memory_modes = match sw.array("memory_modes")? {
        None => vec![game.memory],
        Some(items) => items
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_memory("sweep.memory_modes", s),
                other => Err(Error::config("sweep.memory_modes", format!("expected strings, got `{other}`"))),
            })
            .collect::<Result<_>>()?,
    };
    let nu_grid = match sw.array("nu_grid")? {
        Some(items) => items
            .iter()
            .map(|v| match v {
                Value::Float(f) => Ok(*f),
                Value::Integer(i) => Ok(*i as f64),
                other => Err(Error::config("sweep.nu_grid", format!("expected numbers, got `{other}`"))),
            })
            .collect::<Result<Vec<f64>>>()?,
        None => {
            let step = sw.float("nu_step")?.unwrap_or(COARSE_STEP);
            if !(step > 0.0 && step <= 1.0) {
                return Err(Error::config("sweep.nu_step", "must lie in (0,1]"));
            }
            crate::sweep::uniform_grid(step)
        }
    };
    if nu_grid.is_empty() || nu_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::config("sweep.nu_grid", "must be non-empty and strictly increasing"));
    }
    if nu_grid.iter().any(|&nu| !(nu > 0.0 && nu <= 1.0)) {
        return Err(Error::config("sweep.nu_grid", "values must lie in (0,1]"));
    }
    let fine_step = match sw.float("fine_step")? {
        None => Some(FINE_STEP),
        Some(f) if f == 0.0 => None,
        Some(f) if f > 0.0 && f < 1.0 => Some(f),
        Some(_) => return Err(Error::config("sweep.fine_step", "must lie in [0,1); 0 disables refinement")),
    };
    let k_values = match sw.array("k_values")? {
        None => (1..=5).map(Some).collect(),
        Some(items) => items
            .iter()
            .map(|v| match v {
                Value::Integer(k) if *k >= 1 && *k <= u32::MAX as i64 => Ok(Some(*k as u32)),
                Value::String(s) if s == "none" => Ok(None),
                other => Err(Error::config("sweep.k_values", format!("expected integers >= 1 or \"none\", got `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?,
    };
    if k_values.is_empty() {
        return Err(Error::config("sweep.k_values", "must not be empty"));
    }
    let runs_per_point = sw.uint("runs_per_point")?.map_or(DEFAULT_RUNS_PER_POINT, |r| r as usize);
    if runs_per_point < 1 {
        return Err(Error::config("sweep.runs_per_point", "must be >= 1"));
    }
    let sweep = SweepSettings { topologies, memory_modes, nu_grid, fine_step, k_values, runs_per_point };

    if command == Command::Simulate && nu.is_none() {
        return Err(Error::config("game.nu", "required for simulate; must lie in (0,1]"));
    }

    Ok(RunConfig { command, network, nu, game, execution, meanfield, sweep })
}

impl RunConfig {
    /// Resolved configuration as TOML, parseable back by [`parse_config`].
    pub fn to_toml(&self) -> String {
        let mut root = Table::new();
        root.insert("command".into(), Value::String(self.command.as_str().into()));

        let mut net = Table::new();
        let (mean_degree, beta, m) = match self.network.model {
            NetworkModel::Ws { mean_degree, beta } => (mean_degree, beta, mean_degree / 2),
            NetworkModel::Ba { m } => (2 * m, 0.0, m),
            NetworkModel::Complete => (4, 0.0, 2),
        };
        net.insert("model".into(), Value::String(self.network.model.tag().into()));
        net.insert("n".into(), Value::Integer(self.network.n as i64));
        net.insert("mean_degree".into(), Value::Integer(mean_degree as i64));
        net.insert("beta".into(), Value::Float(beta));
        net.insert("m".into(), Value::Integer(m as i64));
        net.insert("seed".into(), Value::Integer(self.network.seed as i64));
        root.insert("network".into(), Value::Table(net));

        let mut game = Table::new();
        game.insert("r".into(), Value::Float(self.game.r));
        if let Some(nu) = self.nu {
            game.insert("nu".into(), Value::Float(nu));
        }
        game.insert("k_noise".into(), Value::Float(self.game.k_noise));
        game.insert("vc".into(), Value::Float(self.game.vc));
        game.insert(
            "prize_period".into(),
            match self.game.prize_period {
                Some(k) => Value::Integer(i64::from(k)),
                None => Value::String("none".into()),
            },
        );
        game.insert("memory".into(), Value::String(self.game.memory.as_str().into()));
        game.insert("cutoff".into(), Value::Float(self.game.cutoff));
        root.insert("game".into(), Value::Table(game));

        let ex = &self.execution;
        let mut exec = Table::new();
        exec.insert("init_rho_c".into(), Value::Float(ex.init_rho_c));
        exec.insert("max_steps".into(), Value::Integer(ex.max_steps as i64));
        exec.insert("runs".into(), Value::Integer(ex.runs as i64));
        exec.insert("master_seed".into(), Value::Integer(ex.master_seed as i64));
        exec.insert("output_path".into(), Value::String(ex.output_path.display().to_string()));
        if let Some(s) = ex.sample_stride {
            exec.insert("sample_stride".into(), Value::Integer(s as i64));
        }
        root.insert("execution".into(), Value::Table(exec));

        let mut mf = Table::new();
        mf.insert("t_end".into(), Value::Float(self.meanfield.t_end));
        mf.insert("dt".into(), Value::Float(self.meanfield.dt));
        root.insert("meanfield".into(), Value::Table(mf));

        let s = &self.sweep;
        let mut sw = Table::new();
        sw.insert(
            "topologies".into(),
            Value::Array(s.topologies.iter().map(|t| Value::String(topology_string(t))).collect()),
        );
        sw.insert(
            "memory_modes".into(),
            Value::Array(s.memory_modes.iter().map(|m| Value::String(m.as_str().into())).collect()),
        );
        sw.insert("nu_grid".into(), Value::Array(s.nu_grid.iter().map(|&v| Value::Float(v)).collect()));
        sw.insert("fine_step".into(), Value::Float(s.fine_step.unwrap_or(0.0)));
        sw.insert(
            "k_values".into(),
            Value::Array(
                s.k_values
                    .iter()
                    .map(|k| k.map_or_else(|| Value::String("none".into()), |k| Value::Integer(i64::from(k))))
                    .collect(),
            ),
        );
        sw.insert("runs_per_point".into(), Value::Integer(s.runs_per_point as i64));
        root.insert("sweep".into(), Value::Table(sw));

        toml::to_string(&root).expect("config tables always serialize")
    }

    /// `# `-prefixed provenance header for artifacts.
    pub fn comment_header(&self) -> String {
        let mut out = format!("# lurker {}\n", self.command.as_str());
        for line in self.to_toml().lines() {
            if line.is_empty() {
                continue;
            }
            out.push_str(CONFIG_LINE_PREFIX);
            out.push_str(line);
            out.push('\n');
        }
        out
    }

    /// Game parameters as resolved from the config.
    pub fn game_params(&self) -> GameParams {
        self.game
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn simulate_defaults_need_nu() {
        match parse_config(Command::Simulate, None, &[], None) {
            Err(Error::Config { key, .. }) => assert_eq!(key, "game.nu"),
            other => panic!("unexpected {other:?}"),
        }
        let cfg = parse_config(Command::Simulate, None, &ov(&[("game.nu", "0.5")]), None).unwrap();
        assert_eq!(cfg.network.n, 5000);
        assert_eq!(cfg.network.model, NetworkModel::Ws { mean_degree: 4, beta: 0.0 });
        assert_eq!(cfg.game.r, 2.0);
        assert_eq!(cfg.game.k_noise, 0.5);
        assert_eq!(cfg.game.nu, 0.5);
        assert_eq!(cfg.execution.init_rho_c, 0.5);
        assert_eq!(cfg.execution.max_steps, DESK_MAX_STEPS);
    }

    #[test]
    fn nu_range_error_names_interval() {
        let err = parse_config(Command::Simulate, Some("[game]\nnu = 1.5\n"), &[], None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("game.nu") && msg.contains("(0,1]"), "{msg}");
    }

    #[test]
    fn flags_override_file() {
        let file = "[game]\nnu = 0.3\n[network]\nn = 100\n";
        let cfg = parse_config(Command::Simulate, Some(file), &ov(&[("game.nu", "0.7")]), None).unwrap();
        assert_eq!(cfg.game.nu, 0.7);
        assert_eq!(cfg.network.n, 100);
    }

    #[test]
    fn env_sets_workers_but_flags_win() {
        let cfg = parse_config(Command::Meanfield, None, &[], Some("3")).unwrap();
        assert_eq!(cfg.execution.worker_count, Some(3));
        let cfg = parse_config(Command::Meanfield, None, &ov(&[("execution.worker_count", "2")]), Some("3")).unwrap();
        assert_eq!(cfg.execution.worker_count, Some(2));
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = parse_config(Command::Meanfield, Some("[game]\nbogus = 1\n"), &[], None).unwrap_err();
        assert!(matches!(err, Error::Config { ref key, .. } if key == "game.bogus"));
        let err = parse_config(Command::Meanfield, Some("[nope]\n"), &[], None).unwrap_err();
        assert!(matches!(err, Error::Config { ref key, .. } if key == "nope"));
    }

    #[test]
    fn invalid_network_is_rejected() {
        assert!(parse_config(Command::GenerateNetwork, Some("[network]\nmean_degree = 3\n"), &[], None).is_err());
        assert!(parse_config(Command::GenerateNetwork, Some("[network]\nmodel = \"er\"\n"), &[], None).is_err());
    }

    #[test]
    fn sweep_settings() {
        let file = r#"
[network]
n = 200
[sweep]
topologies = ["ws:0.3", "ba", "ws:0"]
memory_modes = ["memoryless", "memory-aware"]
k_values = [1, 3, "none"]
nu_step = 0.25
fine_step = 0
"#;
        let cfg = parse_config(Command::Sweep, Some(file), &[], None).unwrap();
        assert_eq!(cfg.sweep.topologies.len(), 3);
        assert_eq!(cfg.sweep.topologies[1], NetworkModel::Ba { m: 2 });
        assert_eq!(cfg.sweep.nu_grid, vec![0.25, 0.5, 0.75, 1.0]);
        assert_eq!(cfg.sweep.fine_step, None);
        assert_eq!(cfg.sweep.k_values, vec![Some(1), Some(3), None]);
        assert_eq!(cfg.sweep.memory_modes, vec![MemoryMode::Memoryless, MemoryMode::MemoryAware]);
    }

    #[test]
    fn embedded_config_round_trips() {
        let file = "[network]\nmodel = \"ba\"\nn = 300\nseed = 9\n[game]\nnu = 0.4\nprize_period = 3\nmemory = \"memory-aware\"\n";
        let cfg = parse_config(Command::Simulate, Some(file), &[], None).unwrap();
        let artifact = format!("{}step,rho_c\n0,0.5\n", cfg.comment_header());
        let back = parse_config(Command::Simulate, Some(&artifact), &[], None).unwrap();
        assert_eq!(back, cfg);
    }
}
