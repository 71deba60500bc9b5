//! Evaluation network generation and structural metrics.

mod generators;
mod graph;
mod metrics;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use generators::{barabasi_albert, complete, watts_strogatz, WS_MAX_RETRIES};
pub use graph::Graph;
pub use metrics::{
    avg_path_length, clustering_coefficient, diameter, local_clustering, network_metrics, NetworkMetrics,
};

use crate::error::{Error, Result};

/// Network family and its shape parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum NetworkModel {
    /// Watts-Strogatz; `mean_degree` is even, `beta` is the rewiring probability.
    Ws { mean_degree: usize, beta: f64 },
    /// Barabasi-Albert with `m` edges per arriving node.
    Ba { m: usize },
    Complete,
}

impl NetworkModel {
    /// Short model tag used in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            NetworkModel::Ws { .. } => "ws",
            NetworkModel::Ba { .. } => "ba",
            NetworkModel::Complete => "complete",
        }
    }

    /// The `beta_or_m` CSV column: beta for WS, m for BA, empty for complete.
    pub fn shape_param(&self) -> String {
        match self {
            NetworkModel::Ws { beta, .. } => format!("{beta}"),
            NetworkModel::Ba { m } => m.to_string(),
            NetworkModel::Complete => String::new(),
        }
    }
}

impl fmt::Display for NetworkModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetworkModel::Ws { mean_degree, beta } => write!(f, "WS(k={mean_degree}, beta={beta})"),
            NetworkModel::Ba { m } => write!(f, "BA(m={m})"),
            NetworkModel::Complete => write!(f, "complete"),
        }
    }
}

/// Everything needed to reproduce one generated network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub model: NetworkModel,
    pub n: usize,
    pub seed: u64,
}

impl NetworkSpec {
    pub fn ws(n: usize, mean_degree: usize, beta: f64, seed: u64) -> Self {
        NetworkSpec { model: NetworkModel::Ws { mean_degree, beta }, n, seed }
    }

    pub fn ba(n: usize, m: usize, seed: u64) -> Self {
        NetworkSpec { model: NetworkModel::Ba { m }, n, seed }
    }

    pub fn complete(n: usize) -> Self {
        NetworkSpec { model: NetworkModel::Complete, n, seed: 0 }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        NetworkSpec { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        match self.model {
            NetworkModel::Ws { mean_degree, beta } => {
                if mean_degree < 2 || mean_degree % 2 != 0 {
                    return Err(Error::spec(format!("WS mean_degree must be even and >= 2, got {mean_degree}")));
                }
                if self.n <= mean_degree {
                    return Err(Error::spec(format!("WS needs n > mean_degree, got n={}", self.n)));
                }
                if !(0.0..=1.0).contains(&beta) {
                    return Err(Error::spec(format!("WS beta must lie in [0,1], got {beta}")));
                }
            }
            NetworkModel::Ba { m } => {
                if m < 1 || m >= self.n {
                    return Err(Error::spec(format!("BA needs 1 <= m < n, got m={m}, n={}", self.n)));
                }
            }
            NetworkModel::Complete => {
                if self.n < 2 {
                    return Err(Error::spec("complete graph needs n >= 2"));
                }
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Graph> {
        match self.model {
            NetworkModel::Ws { mean_degree, beta } => watts_strogatz(self.n, mean_degree, beta, self.seed),
            NetworkModel::Ba { m } => barabasi_albert(self.n, m, self.seed),
            NetworkModel::Complete => complete(self.n),
        }
    }
}
