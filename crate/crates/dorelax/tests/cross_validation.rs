//! Cross-route validation: the spectral solver, the time-stepping scheme
//! and the Mittag-Leffler closed form must all tell the same story.

mod common;

use common::*;
use dorelax::asymptotics::{ratio_drift, AsymptoticEnvelope};
use dorelax::{mittag_leffler_neg, richardson_refine, solve_spectral, solve_stepping};

/// For ρ = δ_α the spectral solution must reduce to E_α(−λt^α).
#[test]
fn single_atom_reduction_matches_mittag_leffler() {
    let lambda = 1.0;
    for &alpha in &[0.25, 0.5, 0.75] {
        let m = delta_at(alpha);
        let grid = log_grid(1e-2, 1e2, 13);
        let series = solve_spectral(&m, lambda, &grid).unwrap();
        for (t, u) in series.iter() {
            let exact = mittag_leffler_neg(alpha, lambda * t.powf(alpha)).unwrap();
            assert!(
                rel_err(u, exact) < 1e-6,
                "alpha={alpha} t={t}: spectral {u} vs ML {exact}"
            );
        }
    }
}

/// The closed form E_{1/2}(−√t) = erfcx(√t) pins all three routes at once.
#[test]
fn delta_half_closed_form_three_routes() {
    let m = delta_half();
    let t = 1.0f64;
    let exact = erfcx(t.sqrt());
    let spectral = solve_spectral(&m, 1.0, &[t]).unwrap().values()[0];
    let stepping = solve_stepping(&m, 1.0, 0.001, 1.0).unwrap().values()[1000];
    let ml = mittag_leffler_neg(0.5, 1.0).unwrap();
    assert!(rel_err(spectral, exact) < 1e-7, "spectral {spectral}");
    assert!(rel_err(stepping, exact) < 5e-3, "stepping {stepping}");
    assert!(rel_err(ml, exact) < 1e-12, "mlf {ml}");
}

/// Error on a window away from the starting layer must shrink by ≥ 1.8×
/// per step halving (first order), measured against the closed form.
#[test]
fn stepping_convergence_order_against_closed_form() {
    let m = delta_half();
    let mut prev_err: Option<f64> = None;
    for &h in &[0.1, 0.05, 0.025, 0.0125] {
        let series = solve_stepping(&m, 1.0, h, 2.0).unwrap();
        let mut max_rel = 0.0f64;
        for (t, u) in series.iter() {
            if t >= 0.2 {
                max_rel = max_rel.max(rel_err(u, erfcx(t.sqrt())));
            }
        }
        if let Some(p) = prev_err {
            let ratio = p / max_rel;
            assert!(ratio >= 1.8, "h={h}: error ratio {ratio} < 1.8");
        }
        prev_err = Some(max_rel);
    }
}

/// Richardson extrapolation must beat the fine grid at ≥ 90% of points.
#[test]
fn richardson_beats_fine_grid() {
    let m = delta_half();
    let coarse = solve_stepping(&m, 1.0, 0.1, 2.0).unwrap();
    let fine = solve_stepping(&m, 1.0, 0.05, 2.0).unwrap();
    let refined = richardson_refine(&coarse, &fine).unwrap();
    let mut better = 0usize;
    let mut total = 0usize;
    for (i, (t, ur)) in refined.iter().enumerate() {
        if t == 0.0 {
            continue;
        }
        let exact = erfcx(t.sqrt());
        let ef = rel_err(fine.values()[2 * i], exact);
        let er = rel_err(ur, exact);
        total += 1;
        if er < ef {
            better += 1;
        }
    }
    assert!(
        better * 10 >= total * 9,
        "richardson better at only {better}/{total} points"
    );
    // error estimates are populated and non-negative
    assert!(refined.errors().unwrap().iter().all(|&e| e >= 0.0));
}

/// The single-atom power tail: u(t)·t^{1/2}·Γ(1/2) settles fast, so the
/// ratio drift against the power envelope is tiny on [1e6, 1e10].
#[test]
fn delta_half_power_tail_drift() {
    let m = delta_half();
    let grid = log_grid(1e6, 1e10, 9);
    let series = solve_spectral(&m, 1.0, &grid).unwrap();
    let env = AsymptoticEnvelope::PowerTail {
        alpha: 0.5,
        c: None,
    };
    let report = ratio_drift(&series, &env, 0..series.len()).unwrap();
    assert!(report.drift < 0.05, "drift {}", report.drift);
}

/// Spectral and stepping agree within combined error budgets on an
/// overlapping window (the cheap smoke version of the acceptance check).
#[test]
fn method_agreement_smoke() {
    let m = geometric_ten_atoms();
    let coarse = solve_stepping(&m, 1.0, 0.02, 2.0).unwrap();
    let fine = solve_stepping(&m, 1.0, 0.01, 2.0).unwrap();
    let refined = richardson_refine(&coarse, &fine).unwrap();
    for (i, (t, ur)) in refined.iter().enumerate() {
        if t < 0.1 || i % 20 != 0 {
            continue;
        }
        let us = solve_spectral(&m, 1.0, &[t]).unwrap().values()[0];
        assert!(
            rel_err(ur, us) < 2e-3,
            "t={t}: stepping {ur} vs spectral {us}"
        );
    }
}

/// Low end of the agreement window: a short-horizon run with fine steps
/// covers t ∈ [0.01, 0.2] to 1e-3, complementing the acceptance check on
/// [0.05, 10], so the two routes agree across [0.01, 10] combined.
#[test]
fn method_agreement_small_t_constant_density() {
    let m = const_density();
    let coarse = solve_stepping(&m, 1.0, 0.002, 0.2).unwrap();
    let fine = solve_stepping(&m, 1.0, 0.001, 0.2).unwrap();
    let refined = richardson_refine(&coarse, &fine).unwrap();
    for (i, (t, ur)) in refined.iter().enumerate() {
        if t < 0.01 || i % 10 != 0 {
            continue;
        }
        let us = solve_spectral(&m, 1.0, &[t]).unwrap().values()[0];
        assert!(rel_err(ur, us) < 1e-3, "t={t}: {ur} vs {us}");
    }
}
