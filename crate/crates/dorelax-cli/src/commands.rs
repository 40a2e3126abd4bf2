//! Subcommand implementations.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use dorelax::asymptotics::{check_bound, ratio_drift, AsymptoticEnvelope};
use dorelax::spectral::{
    check_complete_monotonicity, numeric_laplace_transform, CmOptions, SolutionSeries,
    SpectralDensity,
};
use dorelax::{richardson_refine, KernelAccessor, SteppingScheme, ValidatedMeasure};

use crate::config::{
    BoundFamilyConfig, DiagnosticConfig, EnvelopeFamilyConfig, KernelWhat, RunConfig,
};
use crate::output::{ndjson_record, CsvWriter};
use crate::CliError;

/// Build a rayon pool honoring the `threads` cap. Results are collected in
/// grid order, so the output is identical to a sequential run.
fn thread_pool(config: &RunConfig) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        if n == 0 {
            return Err(CliError::config(dorelax::Error::InvalidParameter(
                "threads must be >= 1".into(),
            )));
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| {
        CliError::config(dorelax::Error::InvalidParameter(format!(
            "thread pool: {e}"
        )))
    })
}

fn solve_grid(
    pool: &rayon::ThreadPool,
    sd: &SpectralDensity,
    grid: &[f64],
) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let results: Result<Vec<(f64, f64)>, dorelax::Error> =
        pool.install(|| grid.par_iter().map(|&t| sd.value_with_error(t)).collect());
    let pairs = results.map_err(CliError::numeric)?;
    Ok(pairs.into_iter().unzip())
}

/// Linear interpolation of a solution series onto arbitrary times; NaN
/// outside the covered horizon.
fn interp_series(series: &SolutionSeries, t: f64) -> (f64, f64) {
    let times = series.times();
    let values = series.values();
    let errors = series.errors();
    let last = times[times.len() - 1];
    if t > last {
        return (f64::NAN, f64::NAN);
    }
    let i = times.partition_point(|&x| x <= t);
    if i == 0 {
        return (values[0], errors.map_or(f64::NAN, |e| e[0]));
    }
    let (t0, t1) = (times[i - 1], times[i.min(times.len() - 1)]);
    let (v0, v1) = (values[i - 1], values[i.min(values.len() - 1)]);
    if i >= times.len() || t0 == t1 {
        return (
            values[times.len() - 1],
            errors.map_or(f64::NAN, |e| e[times.len() - 1]),
        );
    }
    let w = (t - t0) / (t1 - t0);
    let e = errors.map_or(f64::NAN, |e| e[i - 1].max(e[i]));
    (v0 + (v1 - v0) * w, e)
}

/// `eval`: solution curves as CSV.
pub fn cmd_eval<W: Write>(config: &RunConfig, out: W) -> Result<(), CliError> {
    let measure = config.validate_measure().map_err(CliError::config)?;
    let grid = config.build_grid().map_err(CliError::config)?;
    let pool = thread_pool(config)?;
    let sd = SpectralDensity::with_config(measure.clone(), config.lambda, config.spectral_config())
        .map_err(CliError::config)?;
    let (values, errors) = solve_grid(&pool, &sd, &grid)?;

    let stepping = match &config.solver.stepping {
        Some(opts) => {
            let coarse = SteppingScheme::build(&measure, opts.h, opts.horizon)
                .map_err(CliError::config)?
                .solve(config.lambda)
                .map_err(CliError::numeric)?;
            let fine = SteppingScheme::build(&measure, opts.h / 2.0, opts.horizon)
                .map_err(CliError::config)?
                .solve(config.lambda)
                .map_err(CliError::numeric)?;
            Some(richardson_refine(&coarse, &fine).map_err(CliError::numeric)?)
        }
        None => None,
    };

    let header: &[&str] = if stepping.is_some() {
        &[
            "t",
            "u_spectral",
            "err_spectral",
            "u_stepping",
            "abs_diff",
            "err_stepping",
        ]
    } else {
        &["t", "u_spectral", "err_spectral"]
    };
    let mut csv = CsvWriter::new(out, header)?;
    for (i, &t) in grid.iter().enumerate() {
        match &stepping {
            Some(series) => {
                let (us, es) = interp_series(series, t);
                csv.row(&[t, values[i], errors[i], us, (values[i] - us).abs(), es])?;
            }
            None => csv.row(&[t, values[i], errors[i]])?,
        }
    }
    Ok(())
}

fn envelope_from_config(
    family: &EnvelopeFamilyConfig,
    measure: &ValidatedMeasure,
) -> AsymptoticEnvelope {
    match family {
        EnvelopeFamilyConfig::PowerTail { alpha } => AsymptoticEnvelope::PowerTail {
            alpha: *alpha,
            c: None,
        },
        EnvelopeFamilyConfig::LogPower { exponent } => AsymptoticEnvelope::LogPower {
            exponent: *exponent,
            c: None,
        },
        EnvelopeFamilyConfig::StretchedLog { gamma, beta } => AsymptoticEnvelope::StretchedLog {
            gamma: *gamma,
            beta: *beta,
            c: None,
        },
        EnvelopeFamilyConfig::AtomSeries => AsymptoticEnvelope::AtomSeries {
            atoms: measure.atoms().to_vec(),
        },
    }
}

fn log_window(t_min: f64, t_max: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if !(t_min > 0.0 && t_max > t_min && points >= 2) {
        return Err(CliError::config(dorelax::Error::InvalidParameter(format!(
            "diagnostic window [{t_min}, {t_max}] x {points}"
        ))));
    }
    Ok((0..points)
        .map(|i| t_min * (t_max / t_min).powf(i as f64 / (points - 1) as f64))
        .collect())
}

/// `diagnose`: one NDJSON record per configured diagnostic.
pub fn cmd_diagnose<W: Write>(config: &RunConfig, mut out: W) -> Result<(), CliError> {
    let measure = config.validate_measure().map_err(CliError::config)?;
    let sd = SpectralDensity::with_config(measure.clone(), config.lambda, config.spectral_config())
        .map_err(CliError::config)?;
    let acc = KernelAccessor::new(measure.clone());

    for diag in &config.diagnostics {
        match diag {
            DiagnosticConfig::CmCheck { max_order, tol } => {
                let grid = config.build_grid().map_err(CliError::config)?;
                let opts = CmOptions {
                    max_order: *max_order,
                    tol_cm: *tol,
                    ..CmOptions::default()
                };
                let report =
                    check_complete_monotonicity(&sd, &grid, &opts).map_err(CliError::numeric)?;
                let worst = report
                    .orders
                    .iter()
                    .map(|o| o.worst)
                    .fold(f64::INFINITY, f64::min);
                ndjson_record(
                    &mut out,
                    "cm-check",
                    report.pass,
                    serde_json::json!({
                        "phi_min": report.phi_min,
                        "worst_scaled_difference": worst,
                        "tol": report.tol_cm,
                        "max_violation": (-worst).max(0.0),
                    }),
                )?;
            }
            DiagnosticConfig::Envelope {
                family,
                t_min,
                t_max,
                points,
                max_drift,
            } => {
                let window = log_window(*t_min, *t_max, *points)?;
                let series = sd.solve(&window).map_err(CliError::numeric)?;
                let env = envelope_from_config(family, &measure);
                let report =
                    ratio_drift(&series, &env, 0..series.len()).map_err(CliError::numeric)?;
                ndjson_record(
                    &mut out,
                    "envelope-conformance",
                    report.drift < *max_drift,
                    serde_json::json!({
                        "family": family,
                        "mean_ratio": report.mean_ratio,
                        "drift": report.drift,
                        "max_drift": max_drift,
                    }),
                )?;
            }
            DiagnosticConfig::Bound {
                family,
                b,
                t_min,
                t_max,
                points,
            } => {
                let window = log_window(*t_min, *t_max, *points)?;
                let series = sd.solve(&window).map_err(CliError::numeric)?;
                let env = match family {
                    BoundFamilyConfig::Log => AsymptoticEnvelope::LogBound { b: *b },
                    BoundFamilyConfig::IterLog => AsymptoticEnvelope::IterLogBound { b: *b },
                };
                let report =
                    check_bound(&series, &env, 0..series.len()).map_err(CliError::numeric)?;
                ndjson_record(
                    &mut out,
                    "bound-check",
                    report.bounded,
                    serde_json::json!({
                        "family": family,
                        "b": b,
                        "sup_ratio": report.sup_ratio,
                        "window_sups": report.window_sups,
                    }),
                )?;
            }
            DiagnosticConfig::LaplaceConsistency {
                p_min,
                p_max,
                points,
                max_rel_err,
            } => {
                let ps = log_window(*p_min, *p_max, *points)?;
                let mut worst = 0.0f64;
                for &p in &ps {
                    let numeric = numeric_laplace_transform(&sd, p).map_err(CliError::numeric)?;
                    let k = acc
                        .laplace_symbol(Complex64::new(p, 0.0))
                        .map_err(CliError::numeric)?
                        .re;
                    let exact = k / (p * k + config.lambda);
                    worst = worst.max((numeric - exact).abs() / exact.abs());
                }
                ndjson_record(
                    &mut out,
                    "laplace-consistency",
                    worst <= *max_rel_err,
                    serde_json::json!({
                        "max_rel_err_observed": worst,
                        "max_rel_err": max_rel_err,
                    }),
                )?;
            }
        }
    }
    Ok(())
}

/// `kernel`: tabulate one of the kernel-side evaluators on the grid.
pub fn cmd_kernel<W: Write>(config: &RunConfig, what: KernelWhat, out: W) -> Result<(), CliError> {
    let measure = config.validate_measure().map_err(CliError::config)?;
    let grid = config.build_grid().map_err(CliError::config)?;
    if grid[0] <= 0.0 {
        return Err(CliError::config(dorelax::Error::InvalidParameter(
            "kernel evaluation grids must be strictly positive".into(),
        )));
    }
    let acc = KernelAccessor::new(measure.clone());
    match what {
        KernelWhat::LittleK => {
            let mut csv = CsvWriter::new(out, &["s", "k"])?;
            for &s in &grid {
                csv.row(&[s, acc.k(s).map_err(CliError::numeric)?])?;
            }
        }
        KernelWhat::Kappa => {
            let mut csv = CsvWriter::new(out, &["x", "kappa"])?;
            for &x in &grid {
                csv.row(&[x, acc.kappa(x).map_err(CliError::numeric)?])?;
            }
        }
        KernelWhat::Symbol => {
            // identity column: 𝒦(p) and p^{-1}·M(log p) must agree
            let mut csv = CsvWriter::new(out, &["p", "K", "p_inv_M_log_p"])?;
            for &p in &grid {
                let k = acc
                    .laplace_symbol(Complex64::new(p, 0.0))
                    .map_err(CliError::numeric)?
                    .re;
                let via_m = measure.moment_gf(p.ln()).map_err(CliError::numeric)? / p;
                csv.row(&[p, k, via_m])?;
            }
        }
        KernelWhat::SpectralComponents => {
            let mut csv = CsvWriter::new(out, &["r", "A", "B"])?;
            for &r in &grid {
                let (a, b) = acc.spectral_components(r).map_err(CliError::numeric)?;
                csv.row(&[r, a, b])?;
            }
        }
        KernelWhat::SpectralDensity => {
            let sd = SpectralDensity::with_config(
                measure.clone(),
                config.lambda,
                config.spectral_config(),
            )
            .map_err(CliError::config)?;
            let mut csv = CsvWriter::new(out, &["r", "phi"])?;
            for &r in &grid {
                csv.row(&[r, sd.eval(r).map_err(CliError::numeric)?])?;
            }
        }
    }
    Ok(())
}
