//! Long-time decay laws as evaluatable envelopes, plus the diagnostics
//! that decide whether a computed solution conforms to them.
//!
//! The decay families covered:
//!
//! * power tail t^{−α} (single fractional order),
//! * log-power (log t)^{−e} for densities with power behavior at α = 0,
//! * stretched-log (log t)^{−γ/2−3/4}·e^{−2√β·(log t)^{1/2}} for densities
//!   vanishing like α^γ e^{−β/α} at the origin,
//! * the two-sided atom series Σ wₙ/Γ(2−αₙ)·x^{−αₙ} for step measures,
//! * iterated-log and log upper bounds (log log x)^{−b}, (log x)^{−b}.
//!
//! A "u ∼ C·env" claim with unspecified constant becomes a measurable
//! statement through the ratio u/env over a window: its spread (max/min − 1)
//! must be small and shrink as the window moves right. A two-sided
//! "u ≍ env" claim requires the ratio to stay inside a fixed band. An
//! upper bound "u = O(env)" requires sup u/env not to grow across
//! right-shifted windows.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::measure::AtomSpec;
use crate::special::gamma;
use crate::spectral::SolutionSeries;

/// A parametric long-time decay model; `c` is an optional fitted constant
/// (irrelevant for drift diagnostics, which are scale-free).
#[derive(Debug, Clone, PartialEq)]
pub enum AsymptoticEnvelope {
    /// C·t^{−alpha}.
    PowerTail { alpha: f64, c: Option<f64> },
    /// C·(log t)^{−exponent}.
    LogPower { exponent: f64, c: Option<f64> },
    /// C·(log t)^{−gamma/2−3/4}·exp(−2·sqrt(beta)·(log t)^{1/2}).
    StretchedLog {
        gamma: f64,
        beta: f64,
        c: Option<f64>,
    },
    /// Σ weight/Γ(2−location)·x^{−location} over materialized atoms.
    AtomSeries { atoms: Vec<AtomSpec> },
    /// (log log x)^{−b}, an upper-bound envelope.
    IterLogBound { b: f64 },
    /// (log x)^{−b}, an upper-bound envelope.
    LogBound { b: f64 },
}

impl AsymptoticEnvelope {
    /// Smallest t at which the envelope is positive and decreasing.
    pub fn threshold(&self) -> f64 {
        match self {
            AsymptoticEnvelope::PowerTail { .. } | AsymptoticEnvelope::AtomSeries { .. } => 0.0,
            AsymptoticEnvelope::LogPower { .. }
            | AsymptoticEnvelope::StretchedLog { .. }
            | AsymptoticEnvelope::LogBound { .. } => std::f64::consts::E,
            AsymptoticEnvelope::IterLogBound { .. } => {
                std::f64::consts::E.powf(std::f64::consts::E)
            }
        }
    }

    /// Envelope value at t; `DomainError` at or below the family threshold.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t <= self.threshold() {
            return Err(Error::DomainError(format!(
                "envelope {:?} needs t > {}, got {t}",
                family_name(self),
                self.threshold()
            )));
        }
        Ok(match self {
            AsymptoticEnvelope::PowerTail { alpha, c } => c.unwrap_or(1.0) * t.powf(-alpha),
            AsymptoticEnvelope::LogPower { exponent, c } => {
                c.unwrap_or(1.0) * t.ln().powf(-exponent)
            }
            AsymptoticEnvelope::StretchedLog { gamma, beta, c } => {
                let lt = t.ln();
                c.unwrap_or(1.0)
                    * lt.powf(-gamma / 2.0 - 0.75)
                    * (-2.0 * beta.sqrt() * lt.sqrt()).exp()
            }
            AsymptoticEnvelope::AtomSeries { atoms } => atoms
                .iter()
                .map(|a| a.weight / gamma(2.0 - a.location) * t.powf(-a.location))
                .sum(),
            AsymptoticEnvelope::IterLogBound { b } => t.ln().ln().powf(-b),
            AsymptoticEnvelope::LogBound { b } => t.ln().powf(-b),
        })
    }
}

fn family_name(env: &AsymptoticEnvelope) -> &'static str {
    match env {
        AsymptoticEnvelope::PowerTail { .. } => "PowerTail",
        AsymptoticEnvelope::LogPower { .. } => "LogPower",
        AsymptoticEnvelope::StretchedLog { .. } => "StretchedLog",
        AsymptoticEnvelope::AtomSeries { .. } => "AtomSeries",
        AsymptoticEnvelope::IterLogBound { .. } => "IterLogBound",
        AsymptoticEnvelope::LogBound { .. } => "LogBound",
    }
}

/// Envelope evaluation as a free function, mirroring the envelope methods.
pub fn envelope_eval(env: &AsymptoticEnvelope, t: f64) -> Result<f64> {
    env.eval(t)
}

/// Ratio statistics of a series against an envelope over an index window.
#[derive(Debug, Clone, Copy)]
pub struct DriftReport {
    pub mean_ratio: f64,
    /// Relative spread max/min − 1 of the ratio over the window.
    pub drift: f64,
    pub points: usize,
}

/// Mean and spread of u(tᵢ)/env(tᵢ) over `window`.
pub fn ratio_drift(
    series: &SolutionSeries,
    env: &AsymptoticEnvelope,
    window: Range<usize>,
) -> Result<DriftReport> {
    if window.is_empty() || window.end > series.len() {
        return Err(Error::EmptyWindow);
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut n = 0usize;
    for i in window {
        let t = series.times()[i];
        let ratio = series.values()[i] / env.eval(t)?;
        min = min.min(ratio);
        max = max.max(ratio);
        sum += ratio;
        n += 1;
    }
    Ok(DriftReport {
        mean_ratio: sum / n as f64,
        drift: max / min - 1.0,
        points: n,
    })
}

/// Boundedness verdict for an O(·) claim.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// sup over the whole window of u(tᵢ)/env(tᵢ).
    pub sup_ratio: f64,
    /// sups of consecutive right-shifted sub-windows.
    pub window_sups: Vec<f64>,
    pub bounded: bool,
}

/// Check u = O(env) over `window`: the sup of u/env must not increase
/// across consecutive sub-windows (up to a 2% slack for the slow approach
/// to the bound).
pub fn check_bound(
    series: &SolutionSeries,
    env: &AsymptoticEnvelope,
    window: Range<usize>,
) -> Result<BoundReport> {
    if !matches!(
        env,
        AsymptoticEnvelope::IterLogBound { .. } | AsymptoticEnvelope::LogBound { .. }
    ) {
        return Err(Error::DomainError(
            "check_bound applies to IterLogBound and LogBound envelopes".into(),
        ));
    }
    if window.is_empty() || window.end > series.len() {
        return Err(Error::EmptyWindow);
    }
    let idx: Vec<usize> = window.collect();
    let ratios: Vec<f64> = idx
        .iter()
        .map(|&i| Ok(series.values()[i] / env.eval(series.times()[i])?))
        .collect::<Result<_>>()?;
    let sup_ratio = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let parts = 3.min(ratios.len());
    let chunk = ratios.len().div_ceil(parts);
    let window_sups: Vec<f64> = ratios
        .chunks(chunk)
        .map(|c| c.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let bounded = window_sups.windows(2).all(|w| w[1] <= w[0] * 1.02);
    Ok(BoundReport {
        sup_ratio,
        window_sups,
        bounded,
    })
}
