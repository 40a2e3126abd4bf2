//! # dorelax
//!
//! Numerical machinery for the distributed-order fractional relaxation
//! equation 𝔻₍ρ₎u = −λu, u(0) = 1, where 𝔻₍ρ₎ mixes Caputo-Dzhrbashyan
//! derivatives of all orders α ∈ (0,1) against a positive finite measure ρ.
//!
//! The crate provides two independent solution routes plus closed-form and
//! asymptotic cross-checks:
//!
//! * [`measure`]: specification and validation of ρ (atoms, geometric atom
//!   families accumulating at 0 or 1, parametric densities);
//! * [`kernel`]: the convolution kernel k, its antiderivative ϰ, the
//!   Laplace symbol 𝒦(p) and the spectral components A, B on the cut;
//! * [`spectral`]: the relaxation pattern u_λ(t) as the Laplace transform
//!   of a non-negative spectral density, valid out to t ≫ 1e12, with
//!   complete-monotonicity reports;
//! * [`stepping`]: an independent product-integration Volterra scheme for
//!   small and moderate t, with Richardson refinement;
//! * [`mlf`]: the Mittag-Leffler function E_α(−x), the closed form for
//!   single-atom measures;
//! * [`asymptotics`]: every long-time decay law (power, log-power,
//!   stretched-log, atom series, iterated-log and log bounds) as an
//!   evaluatable envelope with ratio-drift diagnostics.
//!
//! ## Example
//!
//! A single atom at order 1/2 reproduces the Mittag-Leffler pattern; a
//! density spread down to order 0 relaxes only logarithmically:
//!
//! ```
//! use dorelax::{solve_spectral, mittag_leffler_neg, MeasureSpec};
//! use dorelax::measure::DensityFamily;
//!
//! let atom = MeasureSpec::single_atom(0.5, 1.0).validate()?;
//! let series = solve_spectral(&atom, 1.0, &[0.5, 2.0, 8.0])?;
//! for (t, u) in series.iter() {
//!     let exact = mittag_leffler_neg(0.5, t.sqrt())?;
//!     assert!((u - exact).abs() < 1e-8 * exact);
//! }
//!
//! let spread = MeasureSpec::density_only(DensityFamily::Constant(1.0)).validate()?;
//! let slow = solve_spectral(&spread, 1.0, &[1e6, 1e12])?;
//! // u ~ C/log t, so u(1e6)/u(1e12) tracks log(1e12)/log(1e6) = 2
//! let ratio = slow.values()[0] / slow.values()[1];
//! assert!((ratio - 2.0).abs() < 0.25);
//! # Ok::<(), dorelax::Error>(())
//! ```

pub mod asymptotics;
pub mod error;
pub mod kernel;
pub mod measure;
pub mod mlf;
pub mod quad;
pub mod special;
pub mod spectral;
pub mod stepping;

pub use error::{Error, Result};
pub use kernel::KernelAccessor;
pub use measure::{
    AtomFamily, AtomSpec, DensityFamily, Direction, GeometricFamily, MeasureSpec, ValidatedMeasure,
};
pub use quad::QuadConfig;
pub use spectral::{
    check_complete_monotonicity, numeric_laplace_transform, solve_spectral, spectral_density_eval,
    CmOptions, CmReport, SolutionSeries, SolveMethod, SpectralConfig, SpectralDensity,
};
pub use stepping::{richardson_refine, solve_stepping, SteppingScheme};

pub use asymptotics::{
    check_bound, envelope_eval, ratio_drift, AsymptoticEnvelope, BoundReport, DriftReport,
};
pub use mlf::{mittag_leffler_neg, ml_power_tail};
