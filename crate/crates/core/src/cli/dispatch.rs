use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::json;

use super::config::{Command, RunConfig};
use crate::engine::{default_stride, run_with_stride};
use crate::error::{Error, Result};
use crate::meanfield::integrate;
use crate::netgen::{network_metrics, NetworkSpec};
use crate::seed::derive_seed;
use crate::sweep::{critical_nu, refined_sweep, sweep, sweep_csv_rows, SweepSpec, SWEEP_CSV_HEADER};

/// Runs the configured subcommand and returns the artifacts it wrote.
pub fn dispatch(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    match cfg.execution.worker_count {
        Some(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::config("execution.worker_count", e.to_string()))?;
            pool.install(|| dispatch_inner(cfg))
        }
        None => dispatch_inner(cfg),
    }
}

fn dispatch_inner(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let out_dir = &cfg.execution.output_path;
    fs::create_dir_all(out_dir)?;
    match cfg.command {
        Command::GenerateNetwork => generate_network(cfg, out_dir),
        Command::Metrics => metrics(cfg, out_dir),
        Command::Simulate => simulate(cfg, out_dir),
        Command::Meanfield => meanfield(cfg, out_dir),
        Command::Sweep => run_sweep(cfg, out_dir),
    }
}

fn write_artifact(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, body)?;
    Ok(path)
}

/// Seed of the `i`-th graph drawn from the configured network.
fn graph_seed(spec: &NetworkSpec, i: usize) -> u64 {
    if i == 0 {
        spec.seed
    } else {
        derive_seed(spec.seed, &[i as u64])
    }
}

fn generate_network(cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let graph = cfg.network.generate()?;
    let body = format!("{}{}", cfg.comment_header(), graph.to_edge_list());
    Ok(vec![write_artifact(dir, "network.edgelist", &body)?])
}

fn metrics(cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let rows: Vec<Result<(u64, crate::netgen::NetworkMetrics)>> = (0..cfg.execution.runs)
        .into_par_iter()
        .map(|i| {
            let seed = graph_seed(&cfg.network, i);
            let g = cfg.network.with_seed(seed).generate()?;
            Ok((seed, network_metrics(&g)?))
        })
        .collect();
    let mut body = cfg.comment_header();
    body.push_str("model,beta_or_m,n,seed,avg_path_length,diameter,clustering\n");
    let model = &cfg.network.model;
    let (mut apl, mut diam, mut clust) = (0.0, 0.0, 0.0);
    for row in rows {
        let (seed, m) = row?;
        writeln!(
            body,
            "{},{},{},{},{:.6},{},{:.6}",
            model.tag(),
            model.shape_param(),
            cfg.network.n,
            seed,
            m.avg_path_length,
            m.diameter,
            m.clustering
        )
        .unwrap();
        apl += m.avg_path_length;
        diam += m.diameter as f64;
        clust += m.clustering;
    }
    let runs = cfg.execution.runs as f64;
    println!(
        "{}: avg path length {:.2}, diameter {:.2}, clustering {:.3} (mean of {} graphs)",
        model,
        apl / runs,
        diam / runs,
        clust / runs,
        cfg.execution.runs
    );
    Ok(vec![write_artifact(dir, "metrics.csv", &body)?])
}

fn simulate(cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let graph = cfg.network.generate()?;
    let ex = &cfg.execution;
    let stride = ex.sample_stride.unwrap_or_else(|| default_stride(ex.max_steps));
    let params = cfg.game_params();
    let results = (0..ex.runs)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(ex.master_seed, &[i as u64]);
            run_with_stride(&graph, &params, ex.init_rho_c, ex.max_steps, stride, seed)
        })
        .collect::<Result<Vec<_>>>()?;

    let header = cfg.comment_header();
    let mut written = Vec::new();
    let mut summaries = Vec::new();
    for (i, res) in results.iter().enumerate() {
        let body = format!("{header}# run={i} seed={}\n{}", res.seed, res.series_csv());
        written.push(write_artifact(dir, &format!("series_{i}.csv"), &body)?);
        summaries.push(json!({
            "run": i,
            "seed": res.seed,
            "phase": res.phase.as_str(),
            "order": res.phase.order(),
            "steps_executed": res.steps_executed,
            "final_rho_c": res.final_rho_c(),
        }));
        println!(
            "run {i}: {} after {} steps (rho_c = {})",
            res.phase.as_str(),
            res.steps_executed,
            res.final_rho_c()
        );
    }
    let config: toml::Table = cfg.to_toml().parse().expect("resolved config reparses");
    let summary = json!({ "config": config, "runs": summaries });
    let text = serde_json::to_string_pretty(&summary).map_err(|e| Error::Parse(e.to_string()))? + "\n";
    written.push(write_artifact(dir, "summary.json", &text)?);
    Ok(written)
}

fn meanfield(cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let tr = integrate(cfg.execution.init_rho_c, &cfg.game_params(), cfg.meanfield.t_end, cfg.meanfield.dt)?;
    let body = format!("{}# p_c={} p_d={}\n{}", cfg.comment_header(), tr.p_c, tr.p_d, tr.to_csv());
    println!("p_c = {:.4}, p_d = {:.4}, final rho_c = {:e}", tr.p_c, tr.p_d, tr.final_rho_c());
    Ok(vec![write_artifact(dir, "meanfield.csv", &body)?])
}

fn run_sweep(cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let s = &cfg.sweep;
    let mut table = format!("{}{SWEEP_CSV_HEADER}\n", cfg.comment_header());
    let mut critical = format!("{}model,beta_or_m,memory,k,critical_nu\n", cfg.comment_header());
    for &model in &s.topologies {
        for &memory in &s.memory_modes {
            let spec = SweepSpec {
                network: NetworkSpec { model, n: cfg.network.n, seed: 0 },
                params_base: cfg.game_params().with_memory(memory),
                nu_grid: s.nu_grid.clone(),
                k_values: s.k_values.clone(),
                runs_per_point: s.runs_per_point,
                max_steps: cfg.execution.max_steps,
                master_seed: cfg.execution.master_seed,
                init_rho_c: cfg.execution.init_rho_c,
            };
            let result = match s.fine_step {
                Some(step) => refined_sweep(&spec, step)?,
                None => sweep(&spec)?,
            };
            table.push_str(&sweep_csv_rows(&spec, &result));
            for k in result.k_values() {
                let crit = critical_nu(&result, k);
                let k_text = k.map_or_else(|| "none".to_string(), |k| k.to_string());
                let crit_text = crit.map_or_else(|| "none".to_string(), |c| c.to_string());
                writeln!(critical, "{},{},{},{},{}", model.tag(), model.shape_param(), memory, k_text, crit_text).unwrap();
                println!("{model:<24} {memory:<13} k={k_text:<5} critical nu = {crit_text}");
            }
        }
    }
    Ok(vec![write_artifact(dir, "sweep.csv", &table)?, write_artifact(dir, "critical.csv", &critical)?])
}
