//! Phase-fraction sweeps over `nu` and the prize period, and critical-`nu`
//! estimation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{run, Order, Phase, RunResult};
use crate::error::{Error, Result};
use crate::game::GameParams;
use crate::netgen::NetworkSpec;
use crate::seed::derive_seed;

/// Default number of runs per `(nu, k)` cell.
pub const DEFAULT_RUNS_PER_POINT: usize = 30;
pub const COARSE_STEP: f64 = 0.1;
pub const FINE_STEP: f64 = 0.02;

const NETWORK_STREAM: u64 = 1;
const DYNAMICS_STREAM: u64 = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    /// Model and size; the seed field is replaced per run.
    pub network: NetworkSpec,
    /// `nu` and `prize_period` are overridden per cell.
    pub params_base: GameParams,
    pub nu_grid: Vec<f64>,
    /// Prize periods; `None` runs the cell without rewarding.
    pub k_values: Vec<Option<u32>>,
    pub runs_per_point: usize,
    pub max_steps: u64,
    pub master_seed: u64,
    pub init_rho_c: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.network.validate()?;
        if self.nu_grid.is_empty() {
            return Err(Error::spec("nu grid is empty"));
        }
        if self.nu_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::spec("nu grid must be strictly increasing"));
        }
        if let Some(&bad) = self.nu_grid.iter().find(|&&nu| !(nu > 0.0 && nu <= 1.0)) {
            return Err(Error::spec(format!("nu grid value {bad} outside (0,1]")));
        }
        if self.k_values.is_empty() {
            return Err(Error::spec("no prize periods given"));
        }
        if self.k_values.contains(&Some(0)) {
            return Err(Error::spec("prize period must be >= 1"));
        }
        if self.runs_per_point < 1 {
            return Err(Error::spec("runs_per_point must be >= 1"));
        }
        if self.max_steps < 1 {
            return Err(Error::spec("max_steps must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.init_rho_c) {
            return Err(Error::spec("initial density must lie in [0,1]"));
        }
        self.params_base.validate()
    }

    /// Graph seed of run `run`; shared by every cell so cells differ only in
    /// `nu` and `k`.
    pub fn network_seed(&self, run: usize) -> u64 {
        derive_seed(self.master_seed, &[NETWORK_STREAM, run as u64])
    }

    /// Dynamics seed, keyed by the cell's values rather than grid positions so
    /// a refined grid reproduces the coarse cells it shares.
    pub fn dynamics_seed(&self, nu: f64, k: Option<u32>, run: usize) -> u64 {
        let k = k.map_or(0, u64::from);
        derive_seed(self.master_seed, &[DYNAMICS_STREAM, nu.to_bits(), k, run as u64])
    }
}

/// Phase counts for one `(nu, k)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepCell {
    pub nu: f64,
    pub k: Option<u32>,
    pub runs: usize,
    pub cooperate: usize,
    pub defect: usize,
    pub coexist: usize,
}

impl SweepCell {
    fn empty(nu: f64, k: Option<u32>) -> Self {
        SweepCell { nu, k, runs: 0, cooperate: 0, defect: 0, coexist: 0 }
    }

    fn record(&mut self, phase: Phase) {
        self.runs += 1;
        match phase {
            Phase::AllCooperate => self.cooperate += 1,
            Phase::AllDefect => self.defect += 1,
            Phase::Coexistence => self.coexist += 1,
        }
    }

    pub fn fraction_cooperate(&self) -> f64 {
        self.cooperate as f64 / self.runs as f64
    }

    pub fn fraction_defect(&self) -> f64 {
        self.defect as f64 / self.runs as f64
    }

    pub fn fraction_coexist(&self) -> f64 {
        self.coexist as f64 / self.runs as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    /// Cells sorted by `k` then `nu`.
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    pub fn k_values(&self) -> Vec<Option<u32>> {
        let mut ks: Vec<_> = self.cells.iter().map(|c| c.k).collect();
        ks.dedup();
        ks
    }

    pub fn column(&self, k: Option<u32>) -> impl Iterator<Item = &SweepCell> {
        self.cells.iter().filter(move |c| c.k == k)
    }

    pub fn cell(&self, nu: f64, k: Option<u32>) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.k == k && c.nu == nu)
    }

    fn merge(mut self, other: SweepResult) -> SweepResult {
        for cell in other.cells {
            if self.cell(cell.nu, cell.k).is_none() {
                self.cells.push(cell);
            }
        }
        sort_cells(&mut self.cells);
        self
    }

    /// `critical_nu` for every prize period in the result.
    pub fn critical_nus(&self) -> Vec<(Option<u32>, Option<f64>)> {
        self.k_values().into_iter().map(|k| (k, critical_nu(self, k))).collect()
    }
}

fn sort_cells(cells: &mut [SweepCell]) {
    cells.sort_by(|a, b| a.k.cmp(&b.k).then(a.nu.total_cmp(&b.nu)));
}

/// Passes the run's phase through.
pub fn classify(run: &RunResult) -> Phase {
    run.phase
}

/// Spin-system label of a run: ferromagnetic for consensus, paramagnetic for
/// coexistence.
pub fn order_of(run: &RunResult) -> Order {
    classify(run).order()
}

/// Runs every `(nu, k, run)` task, each on a freshly generated graph.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let cells: Vec<(f64, Option<u32>)> = spec
        .k_values
        .iter()
        .flat_map(|&k| spec.nu_grid.iter().map(move |&nu| (nu, k)))
        .collect();
    run_cells(spec, &cells)
}

fn run_cells(spec: &SweepSpec, cells: &[(f64, Option<u32>)]) -> Result<SweepResult> {
    let tasks: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..spec.runs_per_point).map(move |r| (c, r)))
        .collect();
    let phases: Vec<Result<(usize, Phase)>> = tasks
        .par_iter()
        .map(|&(c, r)| {
            let (nu, k) = cells[c];
            let graph = spec.network.with_seed(spec.network_seed(r)).generate()?;
            let params = spec.params_base.with_nu(nu).with_prize_period(k);
            let result = run(&graph, &params, spec.init_rho_c, spec.max_steps, spec.dynamics_seed(nu, k, r))?;
            Ok((c, classify(&result)))
        })
        .collect();
    let mut out: Vec<SweepCell> = cells.iter().map(|&(nu, k)| SweepCell::empty(nu, k)).collect();
    for item in phases {
        let (c, phase) = item?;
        out[c].record(phase);
    }
    sort_cells(&mut out);
    Ok(SweepResult { cells: out })
}

/// Smallest grid `nu` from which every larger grid `nu` has a cooperation
/// fraction above one half. `None` when the largest grid point fails or the
/// column has fewer than two points.
pub fn critical_nu(result: &SweepResult, k: Option<u32>) -> Option<f64> {
    let column: Vec<&SweepCell> = result.column(k).collect();
    if column.len() < 2 {
        return None;
    }
    let mut critical = None;
    for cell in column.iter().rev() {
        if cell.fraction_cooperate() > 0.5 {
            critical = Some(cell.nu);
        } else {
            break;
        }
    }
    critical
}

/// Evenly spaced grid `step, 2*step, ...` up to and including `1.0`, rounded
/// to ten decimals.
pub fn uniform_grid(step: f64) -> Vec<f64> {
    let count = (1.0 / step + 1e-9).floor() as usize;
    (1..=count).map(|i| round10(i as f64 * step)).collect()
}

fn round10(x: f64) -> f64 {
    (x * 1e10).round() / 1e10
}

/// Coarse pass over `spec.nu_grid`, then for each `k` a fine pass at
/// `fine_step` between the coarse critical point and the grid point below
/// it. Fine cells are merged into the result.
pub fn refined_sweep(spec: &SweepSpec, fine_step: f64) -> Result<SweepResult> {
    let coarse = sweep(spec)?;
    let mut fine_cells = Vec::new();
    for &k in &spec.k_values {
        let Some(crit) = critical_nu(&coarse, k) else { continue };
        let below = spec.nu_grid.iter().copied().filter(|&nu| nu < crit).fold(0.0, f64::max);
        let mut i = 1;
        loop {
            let nu = round10(below + i as f64 * fine_step);
            if nu >= crit - 1e-12 {
                break;
            }
            if nu > 0.0 && coarse.cell(nu, k).is_none() {
                fine_cells.push((nu, k));
            }
            i += 1;
        }
    }
    if fine_cells.is_empty() {
        return Ok(coarse);
    }
    Ok(coarse.merge(run_cells(spec, &fine_cells)?))
}

/// One CSV row per cell, in the order of `cells`.
pub fn sweep_csv_rows(spec: &SweepSpec, result: &SweepResult) -> String {
    let mut out = String::new();
    for c in &result.cells {
        out.push_str(&format!(
            "{},{},{},{:?},{},{:?},{:?},{:?}\n",
            spec.network.model.tag(),
            spec.network.model.shape_param(),
            spec.params_base.memory,
            c.nu,
            c.k.map_or_else(|| "none".to_string(), |k| k.to_string()),
            c.fraction_cooperate(),
            c.fraction_defect(),
            c.fraction_coexist(),
        ));
    }
    out
}

pub const SWEEP_CSV_HEADER: &str = "model,beta_or_m,memory,nu,k,frac_coop,frac_defect,frac_coexist";

/// Groups critical values by prize period for summary tables.
pub fn critical_table(result: &SweepResult) -> BTreeMap<Option<u32>, Option<f64>> {
    result.critical_nus().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(k: Option<u32>, fracs: &[(f64, usize)]) -> Vec<SweepCell> {
        fracs
            .iter()
            .map(|&(nu, coop)| SweepCell { nu, k, runs: 10, cooperate: coop, defect: 10 - coop, coexist: 0 })
            .collect()
    }

    fn result(k: Option<u32>, fracs: &[(f64, usize)]) -> SweepResult {
        SweepResult { cells: column(k, fracs) }
    }

    #[test]
    fn classify_passes_phase_through() {
        let mk = |rho: f64| RunResult { series: vec![(0, 0.5), (7, rho)], phase: Phase::from_density(rho), steps_executed: 7, seed: 0 };
        assert_eq!(classify(&mk(1.0)), Phase::AllCooperate);
        assert_eq!(classify(&mk(0.0)), Phase::AllDefect);
        assert_eq!(classify(&mk(0.4)), Phase::Coexistence);
        assert_eq!(order_of(&mk(1.0)), Order::Ferromagnetic);
        assert_eq!(order_of(&mk(0.4)), Order::Paramagnetic);
    }

    #[test]
    fn monotone_front() {
        let r = result(Some(1), &[(0.2, 0), (0.4, 6), (0.6, 4), (0.8, 8), (1.0, 10)]);
        assert_eq!(critical_nu(&r, Some(1)), Some(0.8));
        let r = result(Some(1), &[(0.2, 0), (0.4, 6), (0.6, 7)]);
        assert_eq!(critical_nu(&r, Some(1)), Some(0.4));
        let r = result(Some(1), &[(0.2, 0), (0.4, 0), (0.6, 5)]);
        assert_eq!(critical_nu(&r, Some(1)), None);
        assert_eq!(critical_nu(&result(Some(1), &[(0.5, 10)]), Some(1)), None);
        assert_eq!(critical_nu(&r, Some(2)), None);
    }

    #[test]
    fn grids() {
        assert_eq!(uniform_grid(0.1), vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]);
        assert_eq!(uniform_grid(0.02).len(), 50);
        assert_eq!(*uniform_grid(0.02).last().unwrap(), 1.0);
        assert_eq!(uniform_grid(0.02)[14], 0.3);
    }

    fn small_spec() -> SweepSpec {
        SweepSpec {
            network: NetworkSpec::ws(60, 4, 0.3, 0),
            params_base: GameParams::default(),
            nu_grid: vec![0.05, 0.9],
            k_values: vec![Some(2), None],
            runs_per_point: 4,
            max_steps: 200_000,
            master_seed: 17,
            init_rho_c: 0.5,
        }
    }

    #[test]
    fn fractions_sum_to_one_and_replay() {
        let spec = small_spec();
        let a = sweep(&spec).unwrap();
        assert_eq!(a.cells.len(), 4);
        for c in &a.cells {
            assert_eq!(c.runs, 4);
            assert!((c.fraction_cooperate() + c.fraction_defect() + c.fraction_coexist() - 1.0).abs() < 1e-12);
        }
        assert_eq!(a, sweep(&spec).unwrap());
        assert_eq!(a.k_values(), vec![None, Some(2)]);
    }

    #[test]
    fn rejects_bad_grids() {
        let mut spec = small_spec();
        spec.nu_grid = vec![0.5, 0.4];
        assert!(sweep(&spec).is_err());
        spec.nu_grid = vec![0.0, 0.4];
        assert!(sweep(&spec).is_err());
        spec = small_spec();
        spec.runs_per_point = 0;
        assert!(sweep(&spec).is_err());
        spec = small_spec();
        spec.k_values = vec![Some(0)];
        assert!(sweep(&spec).is_err());
    }

    #[test]
    fn refinement_fills_bracket() {
        let mut spec = small_spec();
        spec.nu_grid = uniform_grid(0.1);
        spec.k_values = vec![Some(2)];
        spec.runs_per_point = 3;
        let refined = refined_sweep(&spec, 0.02).unwrap();
        let crit_coarse = critical_nu(&sweep(&spec).unwrap(), Some(2)).unwrap();
        let fine: Vec<f64> = refined.column(Some(2)).map(|c| c.nu).filter(|nu| !spec.nu_grid.contains(nu)).collect();
        assert_eq!(fine.len(), 4);
        assert!(fine.iter().all(|&nu| nu < crit_coarse && nu > crit_coarse - 0.1 - 1e-9));
        let crit = critical_nu(&refined, Some(2)).unwrap();
        assert!(crit <= crit_coarse);
    }
}
