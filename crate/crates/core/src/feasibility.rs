//! Hardware timing arithmetic: interaction times from (g, Δ, φ), total
//! protocol duration for an n-atom run, and margins against the radiative
//! and cavity damping times.
//!
//! Decoherence enters only as these algebraic comparisons; no open-system
//! dynamics are simulated. The verdict thresholds (×10 for feasible, ×1 for
//! marginal) are committed configuration so the report is testable, not a
//! physics claim.

use serde::Serialize;

use crate::dynamics::tau_for_phi;
use crate::error::{Error, Result};

/// Cavity-QED operating point. Defaults: g = 2π·25 kHz, Δ = 2π·100 kHz,
/// radiative time 10⁻² s, cavity damping time 10⁻² s (the conservative end
/// of the 10–100 ms range).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardwareParams {
    pub g: f64,
    pub delta: f64,
    pub radiative_time: f64,
    pub cavity_damping_time: f64,
}

impl Default for HardwareParams {
    fn default() -> Self {
        HardwareParams {
            g: 2.0 * std::f64::consts::PI * 25.0e3,
            delta: 2.0 * std::f64::consts::PI * 100.0e3,
            radiative_time: 1.0e-2,
            cavity_damping_time: 1.0e-2,
        }
    }
}

impl HardwareParams {
    pub fn new(g: f64, delta: f64, radiative_time: f64, cavity_damping_time: f64) -> Result<Self> {
        for (name, value) in [
            ("g", g),
            ("delta", delta),
            ("radiative_time", radiative_time),
            ("cavity_damping_time", cavity_damping_time),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        Ok(HardwareParams { g, delta, radiative_time, cavity_damping_time })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Feasible,
    Marginal,
    Infeasible,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Feasible => "feasible",
            Verdict::Marginal => "marginal",
            Verdict::Infeasible => "infeasible",
        }
    }

    /// Infeasible < Marginal < Feasible, for monotonicity checks.
    #[cfg(test)]
    fn rank(&self) -> u8 {
        match self {
            Verdict::Infeasible => 0,
            Verdict::Marginal => 1,
            Verdict::Feasible => 2,
        }
    }
}

/// Timing budget of one n-atom run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub tau_per_atom: f64,
    pub n_atoms: usize,
    /// Duration of the resonant π/2 preparation pulse, (π/2)/g; itemized
    /// because it is physically required even though it is numerically
    /// negligible next to the dispersive passes.
    pub prep_pulse_time: f64,
    pub total_time: f64,
    pub radiative_margin: f64,
    pub damping_margin: f64,
    pub verdict: Verdict,
}

/// Budget for n atoms each spending τ = φ·Δ/g² in the cavity, plus one
/// preparation pulse. Margins are limit/total; feasible needs both above
/// 10, marginal both above 1.
pub fn feasibility_report(hw: &HardwareParams, phi: f64, n_atoms: usize) -> Result<FeasibilityReport> {
    if n_atoms < 1 {
        return Err(Error::InvalidArgument("n_atoms must be at least 1".into()));
    }
    if phi < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "phase must be nonnegative, got {phi}"
        )));
    }
    HardwareParams::new(hw.g, hw.delta, hw.radiative_time, hw.cavity_damping_time)?;
    let tau_per_atom = tau_for_phi(phi, hw.g, hw.delta)?;
    let prep_pulse_time = std::f64::consts::FRAC_PI_2 / hw.g;
    let total_time = n_atoms as f64 * tau_per_atom + prep_pulse_time;
    let radiative_margin = hw.radiative_time / total_time;
    let damping_margin = hw.cavity_damping_time / total_time;
    let worst = radiative_margin.min(damping_margin);
    let verdict = if worst > 10.0 {
        Verdict::Feasible
    } else if worst > 1.0 {
        Verdict::Marginal
    } else {
        Verdict::Infeasible
    };
    Ok(FeasibilityReport {
        tau_per_atom,
        n_atoms,
        prep_pulse_time,
        total_time,
        radiative_margin,
        damping_margin,
        verdict,
    })
}

/// Largest register size still rated feasible at this operating point;
/// 0 when even a single atom is not.
pub fn max_feasible_atoms(hw: &HardwareParams, phi: f64) -> Result<usize> {
    let mut best = 0;
    for n in 1..=100_000 {
        if feasibility_report(hw, phi, n)?.verdict == Verdict::Feasible {
            best = n;
        } else {
            break;
        }
    }
    Ok(best)
}
