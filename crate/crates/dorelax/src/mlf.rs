//! The Mittag-Leffler function E_α(−x) on the negative axis, α ∈ (0,1].
//!
//! For a single-atom measure δ_α the relaxation pattern has the closed
//! form u_λ(t) = E_α(−λt^α), which makes this module the third,
//! independent route against the spectral and stepping solvers.
//!
//! Evaluation strategy: the defining power series Σ (−x)ᵏ/Γ(αk+1) where it
//! is numerically trustworthy, otherwise the real-axis integral
//!
//! E_α(−x) = (x·sin(πα)/(απ)) ∫₀∞ e^{−v^{1/α}} / (v² + 2xv·cos(πα) + x²) dv,
//!
//! obtained from the spectral representation for δ_α by substituting
//! r = v^{1/α}, which absorbs the r^{α−1} weight exactly. The alternating
//! series suffers catastrophic cancellation once its largest term
//! (~e^{x^{1/α}}) dwarfs the result, so the series path measures its own
//! cancellation and hands over to the integral when the ratio exceeds 1e4;
//! a fixed x-threshold alone would be wrong for small α. The integral uses
//! its own fixed-rule bisection quadrature, distinct from the engine the
//! spectral solver runs on, so the two routes stay independent oracles.

use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::quad::GaussRule;
use crate::special::{gamma, recip_gamma_unit};

/// Series is only attempted below this argument.
const X_SWITCH: f64 = 5.0;
/// Largest tolerated Σ|terms| / |Σ terms| before the series is distrusted.
const CANCELLATION_CAP: f64 = 1e4;

static GL20: LazyLock<GaussRule> = LazyLock::new(|| GaussRule::legendre(20));

/// E_α(−x) for 0 < α ≤ 1, x ≥ 0. Result lies in (0, 1].
pub fn mittag_leffler_neg(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::DomainError(format!(
            "mittag_leffler_neg requires alpha in (0,1], got {alpha}"
        )));
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::DomainError(format!(
            "mittag_leffler_neg requires x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if alpha == 1.0 {
        return Ok((-x).exp());
    }
    if x <= X_SWITCH {
        if let Some(v) = series_neg(alpha, x) {
            return Ok(v);
        }
    }
    integral_neg(alpha, x)
}

/// Leading long-time envelope t^{−α}/(λ·Γ(1−α)) of E_α(−λt^α).
pub fn ml_power_tail(alpha: f64, lambda: f64, t: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
        return Err(Error::DomainError(format!(
            "power tail requires alpha in (0,1), got {alpha} (alpha=1 decays exponentially)"
        )));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::DomainError(format!(
            "lambda must be > 0, got {lambda}"
        )));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::DomainError(format!("t must be > 0, got {t}")));
    }
    Ok(t.powf(-alpha) / lambda * recip_gamma_unit(1.0 - alpha))
}

/// Defining series with running cancellation measurement. Returns None when
/// cancellation or coefficient range make the f64 sum untrustworthy.
fn series_neg(alpha: f64, x: f64) -> Option<f64> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    for k in 1..2000 {
        let prev_arg = alpha * (k as f64 - 1.0) + 1.0;
        let arg = alpha * k as f64 + 1.0;
        if arg > 150.0 {
            // gamma leaves its reliable range; a series needing terms this
            // far out is never cancellation-safe anyway
            return None;
        }
        term *= -x * gamma(prev_arg) / gamma(arg);
        if !term.is_finite() {
            return None;
        }
        sum += term;
        abs_sum += term.abs();
        if term.abs() <= f64::EPSILON * 1e-2 * abs_sum && k > 3 {
            if abs_sum > CANCELLATION_CAP * sum.abs() {
                return None;
            }
            return Some(sum);
        }
    }
    None
}

/// Real-axis integral representation; positive smooth integrand on
/// [0, v_hi] with v_hi = 745^α (beyond which e^{−v^{1/α}} underflows).
fn integral_neg(alpha: f64, x: f64) -> Result<f64> {
    let pi = std::f64::consts::PI;
    let c = (pi * alpha).cos();
    let s = (pi * alpha).sin();
    let v_hi = 745f64.powf(alpha);
    let f = |v: f64| -> f64 {
        let den = v * v + 2.0 * x * v * c + x * x;
        (-(v.powf(1.0 / alpha))).exp() / den
    };

    // Break points: the denominator varies on the scale of x (with a
    // Lorentzian dip near v = x·|cos πα| when α > 1/2), the numerator on
    // the scale of v_hi.
    let mut cuts = vec![0.0, v_hi];
    let mut m = x / 64.0;
    while m < v_hi {
        if m > 0.0 {
            cuts.push(m);
        }
        m *= 2.0;
    }
    if s < 0.2 {
        for w in [1.0, 4.0, 16.0] {
            for sgn in [-1.0, 1.0] {
                let v = x * (1.0 + sgn * w * s);
                if v > 0.0 && v < v_hi {
                    cuts.push(v);
                }
            }
        }
    }
    for frac in [0.25, 0.5] {
        cuts.push(v_hi * frac);
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();

    // Rough scale first, so tolerances are absolute and the recursion can
    // never chase noise on a segment whose contribution is irrelevant.
    let rule = &*GL20;
    let mut rough = 0.0f64;
    for w in cuts.windows(2) {
        rough += rule.integrate(w[0], w[1], &f).abs();
    }
    let tol = 1e-13 * rough.max(f64::MIN_POSITIVE);
    let floor = 1e-16 * rough.max(f64::MIN_POSITIVE);
    let mut total = 0.0f64;
    for w in cuts.windows(2) {
        total += bisect_gl20(&f, w[0], w[1], 40, tol, floor)?;
    }
    Ok(x * s / (alpha * pi) * total)
}

fn bisect_gl20(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    depth: usize,
    tol: f64,
    floor: f64,
) -> Result<f64> {
    let rule = &*GL20;
    let coarse = rule.integrate(a, b, f);
    let m = 0.5 * (a + b);
    let fine = rule.integrate(a, m, f) + rule.integrate(m, b, f);
    let diff = (coarse - fine).abs();
    if diff <= tol.max(floor) || m <= a || m >= b {
        return Ok(fine);
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure(format!(
            "mittag-leffler integral did not settle on [{a}, {b}] (residual {diff:e})"
        )));
    }
    Ok(bisect_gl20(f, a, m, depth - 1, 0.5 * tol, floor)?
        + bisect_gl20(f, m, b, depth - 1, 0.5 * tol, floor)?)
}
