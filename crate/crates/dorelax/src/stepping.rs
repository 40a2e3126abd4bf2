//! Product-integration time stepping for the Volterra form of the
//! relaxation equation.
//!
//! For differentiable u the equation reads ∫₀ᵗ k(t−s) u′(s) ds = −λ u(t).
//! On a uniform grid tⱼ = jh with u′ taken piecewise constant, the kernel
//! integrals over the sub-intervals are exact in terms of ϰ:
//!
//! a_{n,j} = [ϰ(tₙ−t_{j−1}) − ϰ(tₙ−tⱼ)]/h,
//!
//! which depends only on m = n−j, so a single weight table A_m drives the
//! whole run. The weak singularity of k at 0 is absorbed exactly into
//! a_{n,n} via ϰ. The implicit step
//!
//! uₙ(a_{n,n} + λ) = a_{n,n} u_{n−1} − Σ_{j<n} (uⱼ−u_{j−1}) a_{n,j}
//!
//! is backward-Euler-like and keeps the discrete solution positive and
//! decreasing for completely monotone kernels. This route never touches
//! the Laplace side, so it serves as the independent oracle for the
//! spectral solver at small and moderate t.

use crate::error::{Error, Result};
use crate::kernel::KernelAccessor;
use crate::measure::ValidatedMeasure;
use crate::spectral::{SolutionSeries, SolveMethod};

/// Precomputed scheme for a (measure, h, T) triple.
#[derive(Debug, Clone)]
pub struct SteppingScheme {
    step: f64,
    horizon: f64,
    /// A_m = [ϰ((m+1)h) − ϰ(mh)]/h for m = 0..N−1.
    weights: Vec<f64>,
    /// ϰ(mh) for m = 0..N, kept for the telescoping identity.
    kappa_table: Vec<f64>,
}

impl SteppingScheme {
    /// Build the weight table. Fails if ϰ cannot be evaluated or the grid
    /// parameters are degenerate.
    pub fn build(measure: &ValidatedMeasure, step: f64, horizon: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::DomainError(format!("step h={step} must be > 0")));
        }
        if !(horizon.is_finite() && horizon >= step) {
            return Err(Error::DomainError(format!(
                "horizon T={horizon} must be >= h={step}"
            )));
        }
        let n = (horizon / step).round() as usize;
        let acc = KernelAccessor::new(measure.clone());
        let mut kappa_table = Vec::with_capacity(n + 1);
        for m in 0..=n {
            kappa_table.push(acc.kappa(m as f64 * step)?);
        }
        let weights: Vec<f64> = kappa_table
            .windows(2)
            .map(|w| (w[1] - w[0]) / step)
            .collect();
        debug_assert!(weights.iter().all(|&a| a > 0.0));
        Ok(SteppingScheme {
            step,
            horizon,
            weights,
            kappa_table,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }
    pub fn horizon(&self) -> f64 {
        self.horizon
    }
    /// Convolution weight a_{n,j} = A_{n−j}.
    pub fn weight(&self, n: usize, j: usize) -> f64 {
        self.weights[n - j]
    }
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
    pub fn kappa_table(&self) -> &[f64] {
        &self.kappa_table
    }

    /// March the implicit scheme for rate `lambda`.
    pub fn solve(&self, lambda: f64) -> Result<SolutionSeries> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::DomainError(format!(
                "relaxation rate lambda must be positive, got {lambda}"
            )));
        }
        let n = self.weights.len();
        let a0 = self.weights[0];
        let mut u = Vec::with_capacity(n + 1);
        let mut du = Vec::with_capacity(n + 1);
        u.push(1.0f64);
        du.push(0.0f64);
        for step_idx in 1..=n {
            // history convolution Σ_{j=1}^{n-1} (uⱼ−u_{j−1})·A_{n−j},
            // summed oldest-first for a deterministic reduction order
            let hist: f64 = du[1..step_idx]
                .iter()
                .zip(self.weights[1..step_idx].iter().rev())
                .map(|(d, a)| d * a)
                .sum();
            let next = (a0 * u[step_idx - 1] - hist) / (a0 + lambda);
            if !(next > 0.0 && next < u[step_idx - 1]) {
                return Err(Error::NonMonotoneOutput {
                    step: step_idx,
                    t: step_idx as f64 * self.step,
                });
            }
            du.push(next - u[step_idx - 1]);
            u.push(next);
        }
        let times: Vec<f64> = (0..=n).map(|i| i as f64 * self.step).collect();
        SolutionSeries::new(times, u, lambda, SolveMethod::Stepping, None)
    }
}

/// Convenience wrapper: build the scheme and solve in one call.
pub fn solve_stepping(
    measure: &ValidatedMeasure,
    lambda: f64,
    step: f64,
    horizon: f64,
) -> Result<SolutionSeries> {
    SteppingScheme::build(measure, step, horizon)?.solve(lambda)
}

/// First-order Richardson extrapolation of a (coarse, fine) grid pair.
///
/// `fine` must be `coarse` with the step halved (or the two series may be
/// identical, in which case the output equals the input). The scheme
/// converges at order one away from t = 0, so the extrapolated value is
/// 2·u_fine − u_coarse at the shared points; each point carries the error
/// estimate |u_fine − u_coarse|.
pub fn richardson_refine(coarse: &SolutionSeries, fine: &SolutionSeries) -> Result<SolutionSeries> {
    if coarse.lambda() != fine.lambda() {
        return Err(Error::GridMismatch(format!(
            "rate mismatch: {} vs {}",
            coarse.lambda(),
            fine.lambda()
        )));
    }
    let same_grid =
        coarse.len() == fine.len() && coarse.times().iter().zip(fine.times()).all(|(a, b)| a == b);
    let halved = fine.len() == 2 * coarse.len() - 1
        && coarse.times().iter().enumerate().all(|(i, &t)| {
            let tf = fine.times()[2 * i];
            (t - tf).abs() <= 1e-12 * t.abs().max(1.0)
        });
    if !(same_grid || halved) {
        return Err(Error::GridMismatch(
            "fine grid must be the coarse grid with the step halved".into(),
        ));
    }
    let stride = if same_grid { 1 } else { 2 };
    let mut values = Vec::with_capacity(coarse.len());
    let mut errors = Vec::with_capacity(coarse.len());
    for (i, &uc) in coarse.values().iter().enumerate() {
        let uf = fine.values()[stride * i];
        values.push(2.0 * uf - uc);
        errors.push((uf - uc).abs());
    }
    SolutionSeries::new(
        coarse.times().to_vec(),
        values,
        coarse.lambda(),
        SolveMethod::Stepping,
        Some(errors),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{DensityFamily, MeasureSpec};

    fn delta_half() -> ValidatedMeasure {
        MeasureSpec::single_atom(0.5, 1.0).validate().unwrap()
    }

    #[test]
    fn first_weight_matches_closed_form() {
        // a_{1,1} = ϰ(0.1)/0.1 = 0.1^{1/2}/Γ(3/2)/0.1
        let scheme = SteppingScheme::build(&delta_half(), 0.1, 2.0).unwrap();
        assert!((scheme.weight(1, 1) - 3.568_248_232_305_542).abs() < 1e-10);
    }

    #[test]
    fn first_step_value() {
        // u₁ = a_{1,1}/(a_{1,1}+1)
        let series = solve_stepping(&delta_half(), 1.0, 0.1, 2.0).unwrap();
        assert!((series.values()[1] - 0.781_097_709_855_554).abs() < 1e-10);
    }

    #[test]
    fn weight_identity_telescopes() {
        // Σ_{j=1..n} a_{n,j}·h = ϰ(tₙ)
        let m = MeasureSpec::density_only(DensityFamily::Constant(1.0))
            .validate()
            .unwrap();
        let scheme = SteppingScheme::build(&m, 0.05, 1.0).unwrap();
        for n in [1usize, 7, 20] {
            let sum: f64 = (1..=n).map(|j| scheme.weight(n, j) * scheme.step()).sum();
            let kap = scheme.kappa_table()[n];
            assert!((sum - kap).abs() <= 1e-12 * kap, "n={n}");
        }
    }

    #[test]
    fn output_is_positive_and_decreasing() {
        let m = MeasureSpec::density_only(DensityFamily::PowerLaw {
            a: 1.0,
            exponent: 1.0,
        })
        .validate()
        .unwrap();
        let series = solve_stepping(&m, 2.0, 0.02, 3.0).unwrap();
        let v = series.values();
        assert_eq!(v[0], 1.0);
        for w in v.windows(2) {
            assert!(w[1] > 0.0 && w[1] < w[0]);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let m = delta_half();
        assert!(solve_stepping(&m, 1.0, 0.0, 1.0).is_err());
        assert!(solve_stepping(&m, 1.0, 0.5, 0.1).is_err());
        assert!(solve_stepping(&m, 0.0, 0.1, 1.0).is_err());
    }

    #[test]
    fn richardson_identical_inputs_pass_through() {
        let s = solve_stepping(&delta_half(), 1.0, 0.1, 1.0).unwrap();
        let r = richardson_refine(&s, &s).unwrap();
        assert_eq!(r.values(), s.values());
        assert!(r.errors().unwrap().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn richardson_rejects_mismatched_grids() {
        let a = solve_stepping(&delta_half(), 1.0, 0.1, 1.0).unwrap();
        let b = solve_stepping(&delta_half(), 1.0, 0.04, 1.0).unwrap();
        assert!(matches!(
            richardson_refine(&a, &b),
            Err(Error::GridMismatch(_))
        ));
    }
}
