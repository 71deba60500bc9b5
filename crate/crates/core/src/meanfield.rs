//! Well-mixed dynamics of the cooperator density.
//!
//! In a fully mixed population the cooperator/defector payoff gap is one coin
//! whatever `r`, `nu` or the population size, so the transition probabilities
//! are constants and the density follows a logistic decay:
//! `d rho_c / dt = (p_c - p_d) * rho_c * (1 - rho_c)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{fermi_prob, payoff_meanfield, GameParams};

/// Default integration step.
pub const DEFAULT_DT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanFieldSample {
    pub t: f64,
    pub rho_c: f64,
    pub rho_d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanFieldTrajectory {
    pub samples: Vec<MeanFieldSample>,
    pub p_c: f64,
    pub p_d: f64,
}

impl MeanFieldTrajectory {
    pub fn final_rho_c(&self) -> f64 {
        self.samples.last().map_or(f64::NAN, |s| s.rho_c)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,rho_c,rho_d\n");
        for s in &self.samples {
            out.push_str(&format!("{:?},{:?},{:?}\n", s.t, s.rho_c, s.rho_d));
        }
        out
    }
}

/// `(p_c, p_d)`: a cooperator imitating a defector sees the gap
/// `pi_d - pi_c = vc`, a defector imitating a cooperator sees `-vc`.
pub fn transition_probs(params: &GameParams) -> (f64, f64) {
    // any cooperator count gives the same gap; one keeps pi_c well defined
    let (pi_c, pi_d) = payoff_meanfield(1, params);
    let p_c = fermi_prob(pi_c, pi_d, params);
    let p_d = fermi_prob(pi_d, pi_c, params);
    (p_c, p_d)
}

fn rate(rho: f64, growth: f64) -> f64 {
    growth * rho * (1.0 - rho)
}

/// Fixed-step RK4 from `t = 0` to `t_end`, sampling every step. The step is
/// shrunk slightly when `t_end` is not a multiple of `dt` so the last sample
/// lands on `t_end`.
pub fn integrate(rho_c0: f64, params: &GameParams, t_end: f64, dt: f64) -> Result<MeanFieldTrajectory> {
    if !(0.0..=1.0).contains(&rho_c0) {
        return Err(Error::spec(format!("initial density must lie in [0,1], got {rho_c0}")));
    }
    if !(dt > 0.0 && dt.is_finite()) || !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::spec(format!("need dt > 0 and t_end > 0, got dt={dt}, t_end={t_end}")));
    }
    let (p_c, p_d) = transition_probs(params);
    let growth = p_c - p_d;
    let steps = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    let h = t_end / steps as f64;

    let mut samples = Vec::with_capacity(steps + 1);
    let mut rho = rho_c0;
    samples.push(MeanFieldSample { t: 0.0, rho_c: rho, rho_d: 1.0 - rho });
    for i in 1..=steps {
        let k1 = rate(rho, growth);
        let k2 = rate(rho + 0.5 * h * k1, growth);
        let k3 = rate(rho + 0.5 * h * k2, growth);
        let k4 = rate(rho + h * k3, growth);
        rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let t = i as f64 * h;
        if !rho.is_finite() {
            return Err(Error::Integration { t, reason: "non-finite density".into() });
        }
        samples.push(MeanFieldSample { t, rho_c: rho, rho_d: 1.0 - rho });
    }
    Ok(MeanFieldTrajectory { samples, p_c, p_d })
}

/// Analytic solution `rho0 / (rho0 + (1 - rho0) * exp(c t))` with `c = p_d - p_c`.
pub fn closed_form(rho_c0: f64, params: &GameParams, t: f64) -> f64 {
    let (p_c, p_d) = transition_probs(params);
    let c = p_d - p_c;
    if rho_c0 <= 0.0 {
        return 0.0;
    }
    rho_c0 / (rho_c0 + (1.0 - rho_c0) * (c * t).exp())
}
