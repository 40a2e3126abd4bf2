//! JSON run configuration and its mapping onto the library types.
//!
//! One JSON document controls a run end to end: the measure, the rate, the
//! evaluation grid, solver options and the diagnostics list. All numerics
//! are controlled here rather than by flags, so a config file is a full
//! record of a reproducible run.
//!
//! Measure schema by example:
//!
//! ```json
//! {
//!   "measure": {
//!     "atoms": [ { "location": 0.5, "weight": 1.0 } ],
//!     "atom_families": [
//!       { "direction": "toward-0", "base_location": 0.3, "location_ratio": 0.5,
//!         "base_weight": 0.5, "weight_ratio": 0.5, "tail_tolerance": 1e-12 }
//!     ],
//!     "density": { "kind": "constant", "c": 1.0 }
//!   },
//!   "lambda": 1.0,
//!   "grid": { "kind": "log", "t_min": 1e-2, "t_max": 1e2, "points": 50 },
//!   "solver": { "stepping": { "h": 0.01, "horizon": 10.0 } },
//!   "diagnostics": [ { "type": "cm-check", "max_order": 4 } ],
//!   "threads": 4
//! }
//! ```
//!
//! Density kinds: `constant` {c}, `power-law` {a, exponent},
//! `power-exponential` {a, gamma, beta}, `tabulated` {points: [[α, μ], ...]}.

use serde::{Deserialize, Serialize};

use dorelax::measure::{
    AtomFamily, AtomSpec, DensityFamily, Direction, GeometricFamily, MeasureSpec,
};
use dorelax::spectral::SpectralConfig;
use dorelax::{QuadConfig, ValidatedMeasure};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub measure: MeasureConfig,
    pub lambda: f64,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub diagnostics: Vec<DiagnosticConfig>,
    /// Parallelism cap for grid evaluation; all available cores if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<AtomConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atom_families: Vec<AtomFamilyConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomConfig {
    pub location: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomFamilyConfig {
    pub direction: DirectionConfig,
    pub base_location: f64,
    pub location_ratio: f64,
    pub base_weight: f64,
    pub weight_ratio: f64,
    #[serde(default = "default_tail_tolerance")]
    pub tail_tolerance: f64,
}

fn default_tail_tolerance() -> f64 {
    1e-12
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum DirectionConfig {
    #[serde(rename = "toward-0")]
    TowardZero,
    #[serde(rename = "toward-1")]
    TowardOne,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum DensityConfig {
    #[serde(rename = "constant")]
    Constant { c: f64 },
    #[serde(rename = "power-law")]
    PowerLaw { a: f64, exponent: f64 },
    #[serde(rename = "power-exponential")]
    PowerExponential { a: f64, gamma: f64, beta: f64 },
    #[serde(rename = "tabulated")]
    Tabulated { points: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum GridConfig {
    #[serde(rename = "log")]
    Log {
        t_min: f64,
        t_max: f64,
        points: usize,
    },
    #[serde(rename = "linear")]
    Linear {
        t_min: f64,
        t_max: f64,
        points: usize,
    },
    #[serde(rename = "explicit")]
    Explicit { times: Vec<f64> },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stepping: Option<SteppingOptions>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panel_rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_rel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteppingOptions {
    pub h: f64,
    pub horizon: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum DiagnosticConfig {
    /// Complete-monotonicity report: φ ≥ 0 plus alternating divided
    /// differences up to `max_order` on the run grid.
    #[serde(rename = "cm-check")]
    CmCheck {
        #[serde(default = "default_cm_order")]
        max_order: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tol: Option<f64>,
    },
    /// Ratio-drift conformance against a decay-law envelope over its own
    /// log window.
    #[serde(rename = "envelope")]
    Envelope {
        family: EnvelopeFamilyConfig,
        t_min: f64,
        t_max: f64,
        points: usize,
        max_drift: f64,
    },
    /// O(·) upper-bound verdict over a log window.
    #[serde(rename = "bound")]
    Bound {
        family: BoundFamilyConfig,
        b: f64,
        t_min: f64,
        t_max: f64,
        points: usize,
    },
    /// Numerical Laplace transform of the solution against
    /// 𝒦(p)/(p𝒦(p)+λ).
    #[serde(rename = "laplace-consistency")]
    LaplaceConsistency {
        p_min: f64,
        p_max: f64,
        points: usize,
        #[serde(default = "default_laplace_tol")]
        max_rel_err: f64,
    },
}

fn default_cm_order() -> usize {
    4
}
fn default_laplace_tol() -> f64 {
    1e-3
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "name", deny_unknown_fields)]
pub enum EnvelopeFamilyConfig {
    #[serde(rename = "power-tail")]
    PowerTail { alpha: f64 },
    #[serde(rename = "log-power")]
    LogPower { exponent: f64 },
    #[serde(rename = "stretched-log")]
    StretchedLog { gamma: f64, beta: f64 },
    /// Atom series built from the measure's materialized atoms.
    #[serde(rename = "atom-series")]
    AtomSeries,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum BoundFamilyConfig {
    #[serde(rename = "log")]
    Log,
    #[serde(rename = "iter-log")]
    IterLog,
}

/// Which evaluator the `kernel` subcommand tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelWhat {
    LittleK,
    Kappa,
    Symbol,
    SpectralComponents,
    SpectralDensity,
}

impl MeasureConfig {
    pub fn to_spec(&self) -> MeasureSpec {
        let mut families = Vec::new();
        if !self.atoms.is_empty() {
            families.push(AtomFamily::Explicit(
                self.atoms
                    .iter()
                    .map(|a| AtomSpec::new(a.location, a.weight))
                    .collect(),
            ));
        }
        for f in &self.atom_families {
            families.push(AtomFamily::Geometric(GeometricFamily {
                direction: match f.direction {
                    DirectionConfig::TowardZero => Direction::TowardZero,
                    DirectionConfig::TowardOne => Direction::TowardOne,
                },
                base_location: f.base_location,
                location_ratio: f.location_ratio,
                base_weight: f.base_weight,
                weight_ratio: f.weight_ratio,
                tail_tolerance: f.tail_tolerance,
            }));
        }
        let density = self.density.as_ref().map(|d| match d {
            DensityConfig::Constant { c } => DensityFamily::Constant(*c),
            DensityConfig::PowerLaw { a, exponent } => DensityFamily::PowerLaw {
                a: *a,
                exponent: *exponent,
            },
            DensityConfig::PowerExponential { a, gamma, beta } => DensityFamily::PowerExponential {
                a: *a,
                gamma: *gamma,
                beta: *beta,
            },
            DensityConfig::Tabulated { points } => DensityFamily::Tabulated(points.clone()),
        });
        MeasureSpec {
            atoms: families,
            density,
        }
    }
}

impl RunConfig {
    /// Validate the measure and the scalar parameters.
    pub fn validate_measure(&self) -> Result<ValidatedMeasure, dorelax::Error> {
        let quad = match &self.solver.spectral {
            Some(s) => QuadConfig {
                rel_tol: s.quad_rel_tol.unwrap_or(1e-10),
                ..QuadConfig::default()
            },
            None => QuadConfig::default(),
        };
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(dorelax::Error::DomainError(format!(
                "lambda must be positive, got {}",
                self.lambda
            )));
        }
        self.measure.to_spec().validate_with(quad)
    }

    pub fn spectral_config(&self) -> SpectralConfig {
        let mut cfg = SpectralConfig::default();
        if let Some(s) = &self.solver.spectral {
            if let Some(v) = s.panel_rel_tol {
                cfg.panel_rel_tol = v;
            }
            if let Some(v) = s.tail_rel {
                cfg.tail_rel = v;
            }
        }
        cfg
    }

    /// Materialize the evaluation grid; errors on degenerate specs.
    // negated comparisons also reject NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn build_grid(&self) -> Result<Vec<f64>, dorelax::Error> {
        let grid = self
            .grid
            .as_ref()
            .ok_or_else(|| dorelax::Error::InvalidParameter("missing grid".into()))?;
        let times = match grid {
            GridConfig::Log {
                t_min,
                t_max,
                points,
            } => {
                if !(t_min.is_finite() && *t_min > 0.0 && t_max > t_min && *points >= 2) {
                    return Err(dorelax::Error::InvalidParameter(format!(
                        "log grid requires 0 < t_min < t_max and points >= 2, got \
                         [{t_min}, {t_max}] x {points}"
                    )));
                }
                (0..*points)
                    .map(|i| t_min * (t_max / t_min).powf(i as f64 / (*points - 1) as f64))
                    .collect()
            }
            GridConfig::Linear {
                t_min,
                t_max,
                points,
            } => {
                if !(t_min.is_finite() && *t_min >= 0.0 && t_max > t_min && *points >= 2) {
                    return Err(dorelax::Error::InvalidParameter(format!(
                        "linear grid requires 0 <= t_min < t_max and points >= 2, got \
                         [{t_min}, {t_max}] x {points}"
                    )));
                }
                (0..*points)
                    .map(|i| t_min + (t_max - t_min) * i as f64 / (*points - 1) as f64)
                    .collect()
            }
            GridConfig::Explicit { times } => times.clone(),
        };
        if times.is_empty() {
            return Err(dorelax::Error::InvalidParameter("empty grid".into()));
        }
        for w in times.windows(2) {
            if !(w[0] < w[1]) {
                return Err(dorelax::Error::InvalidParameter(
                    "grid must be strictly increasing".into(),
                ));
            }
        }
        if times[0] < 0.0 {
            return Err(dorelax::Error::InvalidParameter(
                "grid times must be >= 0".into(),
            ));
        }
        Ok(times)
    }
}
