//! Adaptive Gauss–Legendre quadrature.
//!
//! One engine serves every kernel-side integral over the order variable α,
//! so the tolerances used in cross-identities (k vs ϰ′, 𝒦 vs the moment
//! generating function, ...) are consistent. Integrands peaked far inside a
//! panel are invisible to a fixed rule, so callers pass *seed* break points
//! at the known decay scales and the engine refines from there.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::LazyLock;

use crate::error::{Error, Result};

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Build the rule by Newton iteration on the Legendre polynomial.
    pub fn legendre(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi-style initial guess, then Newton.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // P_n(x) and P_n'(x) by the three-term recurrence.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    /// Apply the rule to `f` on [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(c + h * x);
        }
        acc * h
    }
}

static GL15: LazyLock<GaussRule> = LazyLock::new(|| GaussRule::legendre(15));
static GL32: LazyLock<GaussRule> = LazyLock::new(|| GaussRule::legendre(32));

/// 15-point rule used by the adaptive engine.
pub fn gl15() -> &'static GaussRule {
    &GL15
}

/// 32-point rule used for the spectral panels.
pub fn gl32() -> &'static GaussRule {
    &GL32
}

/// Tolerances for the adaptive engine.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Relative tolerance on the accumulated integral.
    pub rel_tol: f64,
    /// Cap on panel subdivisions before reporting failure.
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-10,
            max_subdivisions: 4000,
        }
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    abs: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

fn eval_panel<F: FnMut(f64) -> f64>(a: f64, b: f64, f: &mut F, evals: &mut usize) -> Panel {
    let rule = gl15();
    let m = 0.5 * (a + b);
    let coarse = rule.integrate(a, b, &mut *f);
    let left = rule.integrate(a, m, &mut *f);
    let right = rule.integrate(m, b, &mut *f);
    *evals += 45;
    let refined = left + right;
    Panel {
        a,
        b,
        value: refined,
        abs: left.abs() + right.abs(),
        err: (coarse - refined).abs(),
    }
}

/// Integrate `f` over [a, b] adaptively. `seeds` are interior break points
/// from which the initial panels are built; they must not be relied on for
/// correctness of the value, only for making narrow features visible.
// negated form rejects NaN as well
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    seeds: &[f64],
    cfg: &QuadConfig,
) -> Result<Estimate> {
    if !(a < b) {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut cuts: Vec<f64> = Vec::with_capacity(seeds.len() + 2);
    cuts.push(a);
    for &s in seeds {
        if s > a && s < b {
            cuts.push(s);
        }
    }
    cuts.push(b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();

    let mut evals = 0usize;
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_abs = 0.0;
    let mut total_err = 0.0;
    for w in cuts.windows(2) {
        let p = eval_panel(w[0], w[1], &mut f, &mut evals);
        total += p.value;
        total_abs += p.abs;
        total_err += p.err;
        heap.push(p);
    }

    let mut splits = 0usize;
    loop {
        if total_abs == 0.0 {
            return Ok(Estimate {
                value: 0.0,
                error: 0.0,
                evaluations: evals,
            });
        }
        // Never demand more than what cancellation between panels permits.
        let scale = total.abs().max(1e-6 * total_abs);
        if total_err <= cfg.rel_tol * scale {
            return Ok(Estimate {
                value: total,
                error: total_err,
                evaluations: evals,
            });
        }
        if splits >= cfg.max_subdivisions {
            return Err(Error::QuadratureFailure(format!(
                "adaptive quadrature did not reach rel_tol={:e} after {} subdivisions \
                 (estimate {:e}, error {:e})",
                cfg.rel_tol, splits, total, total_err
            )));
        }
        let worst = heap.pop().expect("heap cannot be empty here");
        total -= worst.value;
        total_abs -= worst.abs;
        total_err -= worst.err;
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // Interval no longer splittable at f64 resolution; accept its value.
            total += worst.value;
            total_abs += worst.abs;
            heap.push(Panel { err: 0.0, ..worst });
            splits += 1;
            continue;
        }
        for (lo, hi) in [(worst.a, m), (m, worst.b)] {
            let p = eval_panel(lo, hi, &mut f, &mut evals);
            total += p.value;
            total_abs += p.abs;
            total_err += p.err;
            heap.push(p);
        }
        splits += 1;
    }
}

/// Break points resolving the decay scale of a factor exp(α·z) on [0, 1].
///
/// For strongly negative z the factor is concentrated near α = 0 at scale
/// 1/|z|; for strongly positive z near α = 1. A fixed rule on [0,1] never
/// samples there, so panels must be cut at those scales up front.
pub fn exp_weight_seeds(z: f64) -> Vec<f64> {
    let mut seeds = Vec::new();
    if z.abs() <= 8.0 {
        return seeds;
    }
    let scale = 1.0 / z.abs();
    let mut s = 0.25 * scale;
    while s < 1.0 {
        seeds.push(if z < 0.0 { s } else { 1.0 - s });
        s *= 4.0;
    }
    seeds
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let rule = GaussRule::legendre(15);
        // degree 2n-1 = 29 exactness; test x^20 over [0,1]: 1/21
        let v = rule.integrate(0.0, 1.0, |x| x.powi(20));
        assert!((v - 1.0 / 21.0).abs() < 1e-15);
        let w_sum: f64 = rule.weights.iter().sum();
        assert!((w_sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let cfg = QuadConfig::default();
        // ∫0^1 x^{-1/2} dx = 2
        let est = integrate_adaptive(|x| x.powf(-0.5), 0.0, 1.0, &[], &cfg).unwrap();
        assert!((est.value - 2.0).abs() < 1e-9, "got {}", est.value);
    }

    #[test]
    fn adaptive_finds_seeded_narrow_peak() {
        let cfg = QuadConfig::default();
        let z = -2e4;
        // ∫0^1 e^{αz} dα = (1 - e^z)/|z| ≈ 1/|z|
        let est =
            integrate_adaptive(|x| (x * z).exp(), 0.0, 1.0, &exp_weight_seeds(z), &cfg).unwrap();
        let exact = 1.0 / 2e4;
        assert!(
            (est.value - exact).abs() / exact < 1e-10,
            "got {}",
            est.value
        );
    }

    #[test]
    fn adaptive_rejects_on_subdivision_cap() {
        let cfg = QuadConfig {
            rel_tol: 1e-12,
            max_subdivisions: 3,
        };
        let r = integrate_adaptive(|x| x.powf(-0.9), 0.0, 1.0, &[], &cfg);
        assert!(matches!(r, Err(Error::QuadratureFailure(_))));
    }

    #[test]
    fn empty_interval_is_zero() {
        let cfg = QuadConfig::default();
        let est = integrate_adaptive(|_| 1.0, 1.0, 1.0, &[], &cfg).unwrap();
        assert_eq!(est.value, 0.0);
    }
}
