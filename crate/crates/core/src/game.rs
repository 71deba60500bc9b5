//! Payoffs, prize schedule and the Fermi adoption probability.
//!
//! Every function here is pure; the simulation engine composes them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Active contributor.
    Cooperator,
    /// Lurker.
    Defector,
}

impl Strategy {
    pub fn is_cooperator(self) -> bool {
        self == Strategy::Cooperator
    }
}

/// How agents carry payoffs between activations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MemoryMode {
    /// Payoffs are reset each time the agent is activated.
    Memoryless,
    /// Payoffs accumulate for the whole run.
    MemoryAware,
}

impl MemoryMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MemoryMode::Memoryless => "memoryless",
            MemoryMode::MemoryAware => "memory-aware",
        }
    }
}

impl fmt::Display for MemoryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Model constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    /// Synergy factor applied to pooled coins.
    pub r: f64,
    /// Interest heterogeneity scaling the pool, in (0, 1].
    pub nu: f64,
    /// Noise of strategy adoption.
    pub k_noise: f64,
    /// Value of one virtual coin.
    pub vc: f64,
    /// Cooperative activations between prizes; `None` disables rewarding.
    pub prize_period: Option<u32>,
    pub memory: MemoryMode,
    /// Clamp on the Fermi exponent `(pi_y - pi_x) / K`.
    pub cutoff: f64,
}

impl Default for GameParams {
    fn default() -> Self {
        GameParams {
            r: 2.0,
            nu: 0.5,
            k_noise: 0.5,
            vc: 1.0,
            prize_period: None,
            memory: MemoryMode::Memoryless,
            cutoff: 20.0,
        }
    }
}

impl GameParams {
    pub fn with_nu(self, nu: f64) -> Self {
        GameParams { nu, ..self }
    }

    pub fn with_prize_period(self, prize_period: Option<u32>) -> Self {
        GameParams { prize_period, ..self }
    }

    pub fn with_memory(self, memory: MemoryMode) -> Self {
        GameParams { memory, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::spec(format!("{name} must be finite and > 0, got {v}")))
            }
        };
        positive("r", self.r)?;
        positive("K", self.k_noise)?;
        positive("vc", self.vc)?;
        positive("cutoff", self.cutoff)?;
        if !(self.nu > 0.0 && self.nu <= 1.0) {
            return Err(Error::spec(format!("nu must lie in (0,1], got {}", self.nu)));
        }
        if self.prize_period == Some(0) {
            return Err(Error::spec("prize period must be >= 1"));
        }
        Ok(())
    }

    /// Value every member of a group receives per cooperator in it.
    #[inline]
    pub fn pot_per_cooperator(&self) -> f64 {
        self.r * self.nu * self.vc
    }
}

/// Well-mixed payoffs `(pi_c, pi_d)` for `n_cooperators` cooperators.
///
/// `pi_c` is meaningless when `n_cooperators == 0` but is still returned.
pub fn payoff_meanfield(n_cooperators: usize, params: &GameParams) -> (f64, f64) {
    let pi_d = params.pot_per_cooperator() * n_cooperators as f64;
    (pi_d - params.vc, pi_d)
}

/// Payoff of one member of a group holding `group_cooperators` cooperators.
/// The pot is shared, not divided: every member receives all of it, and a
/// cooperator pays one coin into this group.
pub fn payoff_group(group_cooperators: usize, is_cooperator: bool, params: &GameParams) -> Result<f64> {
    if is_cooperator && group_cooperators == 0 {
        return Err(Error::Contract(
            "a cooperator's group must count at least the cooperator itself".into(),
        ));
    }
    Ok(group_payoff_unchecked(group_cooperators, is_cooperator, params))
}

#[inline]
pub(crate) fn group_payoff_unchecked(group_cooperators: usize, is_cooperator: bool, params: &GameParams) -> f64 {
    let pot = params.pot_per_cooperator() * group_cooperators as f64;
    if is_cooperator {
        pot - params.vc
    } else {
        pot
    }
}

/// Prize for a cooperation streak: `streak * vc` when the streak has reached
/// the prize period, zero otherwise or when rewarding is disabled.
pub fn prize(streak: u32, params: &GameParams) -> f64 {
    match params.prize_period {
        Some(k) if streak == k => f64::from(streak) * params.vc,
        _ => 0.0,
    }
}

/// Probability that `y` adopts the strategy of `x`:
/// `1 / (1 + exp((pi_y - pi_x) / K))` with the exponent clamped to
/// `[-cutoff, cutoff]`.
pub fn fermi_prob(pi_x: f64, pi_y: f64, params: &GameParams) -> f64 {
    let exponent = ((pi_y - pi_x) / params.k_noise).clamp(-params.cutoff, params.cutoff);
    1.0 / (1.0 + exponent.exp())
}
