use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::config::Command;

#[derive(Debug, Parser)]
#[command(name = "lurker", version, about = "Lurking/delurking evolutionary game simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: SubCommand,

    /// TOML config file, or an artifact whose embedded config should be replayed.
    #[arg(short, long, global = true)]
    pub config: Option<PathBuf>,

    /// Override any config key, e.g. `--set game.nu=0.4`. Repeatable; wins over the file.
    #[arg(short, long = "set", value_name = "KEY=VALUE", global = true)]
    pub set: Vec<String>,

    #[arg(long, global = true)]
    pub model: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<u64>,
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true)]
    pub nu: Option<f64>,
    #[arg(long, global = true)]
    pub prize_period: Option<u32>,
    #[arg(long, global = true)]
    pub memory: Option<String>,
    #[arg(long, global = true)]
    pub max_steps: Option<u64>,
    #[arg(long, global = true)]
    pub runs: Option<u64>,
    /// Master seed for the dynamics.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub network_seed: Option<u64>,
    /// Output directory.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    pub workers: Option<u64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum SubCommand {
    /// Write a generated network as an edge list.
    GenerateNetwork,
    /// Average path length, diameter and clustering of generated networks.
    Metrics,
    /// Monte Carlo runs on one network.
    Simulate,
    /// Integrate the well-mixed density equation.
    Meanfield,
    /// Phase fractions and critical nu over a nu x k grid.
    Sweep,
}

impl From<SubCommand> for Command {
    fn from(s: SubCommand) -> Command {
        match s {
            SubCommand::GenerateNetwork => Command::GenerateNetwork,
            SubCommand::Metrics => Command::Metrics,
            SubCommand::Simulate => Command::Simulate,
            SubCommand::Meanfield => Command::Meanfield,
            SubCommand::Sweep => Command::Sweep,
        }
    }
}

impl Cli {
    /// Shortcut flags and `--set` entries as `section.key=value` pairs, in
    /// precedence order (later wins).
    pub fn overrides(&self) -> Result<Vec<(String, String)>, String> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push((k.to_string(), v));
            }
        };
        push("network.model", self.model.as_ref().map(|m| format!("\"{m}\"")));
        push("network.n", self.n.map(|v| v.to_string()));
        push("network.beta", self.beta.map(|v| format!("{v:?}")));
        push("network.seed", self.network_seed.map(|v| v.to_string()));
        push("game.nu", self.nu.map(|v| format!("{v:?}")));
        push("game.prize_period", self.prize_period.map(|v| v.to_string()));
        push("game.memory", self.memory.as_ref().map(|m| format!("\"{m}\"")));
        push("execution.max_steps", self.max_steps.map(|v| v.to_string()));
        push("execution.runs", self.runs.map(|v| v.to_string()));
        push("execution.master_seed", self.seed.map(|v| v.to_string()));
        push("execution.output_path", self.output.as_ref().map(|p| format!("{:?}", p.display().to_string())));
        push("execution.worker_count", self.workers.map(|v| v.to_string()));
        for item in &self.set {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("`--set {item}`: expected KEY=VALUE"))?;
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(out)
    }
}
