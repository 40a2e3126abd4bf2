//! Shared fixtures and independent oracles for the integration suites.
//!
//! Everything here is deliberately implemented apart from the library's
//! evaluation paths: the scaled complementary error function comes from an
//! incomplete-gamma continued fraction, so E_{1/2}(−x) = erfcx(x) serves as
//! a genuinely external reference for the solvers.

#![allow(dead_code)]

use dorelax::measure::{
    AtomFamily, AtomSpec, DensityFamily, Direction, GeometricFamily, MeasureSpec,
};
use dorelax::ValidatedMeasure;

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Scaled complementary error function erfcx(x) = e^{x²}·erfc(x), x ≥ 0.
///
/// Small x: Maclaurin series for erf. Large x: Lentz continued fraction for
/// Γ(1/2, x²), which never forms e^{x²} explicitly, so there is no overflow
/// for large arguments. Accurate to ~1e-14 relative.
pub fn erfcx(x: f64) -> f64 {
    assert!(x >= 0.0 && x.is_finite());
    const SQRT_PI: f64 = 1.772_453_850_905_516;
    if x < 1.25 {
        // erf by series, then scale
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        for n in 1..200 {
            let nf = n as f64;
            term *= -x2 / nf;
            let add = term / (2.0 * nf + 1.0);
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        let erf = 2.0 / SQRT_PI * sum;
        x2.exp() * (1.0 - erf)
    } else {
        // continued fraction for Γ(a, z), a = 1/2, z = x² (modified Lentz)
        let a = 0.5;
        let z = x * x;
        const FPMIN: f64 = 1e-300;
        let mut b = z + 1.0 - a;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < FPMIN {
                d = FPMIN;
            }
            c = b + an / c;
            if c.abs() < FPMIN {
                c = FPMIN;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        // Γ(1/2, x²) = e^{−x²}·x·h, so erfcx = x·h/√π
        x * h / SQRT_PI
    }
}

/// δ_{1/2} with unit weight.
pub fn delta_half() -> ValidatedMeasure {
    MeasureSpec::single_atom(0.5, 1.0).validate().unwrap()
}

pub fn delta_at(alpha: f64) -> ValidatedMeasure {
    MeasureSpec::single_atom(alpha, 1.0).validate().unwrap()
}

/// μ ≡ 1 on [0,1].
pub fn const_density() -> ValidatedMeasure {
    MeasureSpec::density_only(DensityFamily::Constant(1.0))
        .validate()
        .unwrap()
}

/// μ(α) = α^ν.
pub fn power_law(nu: f64) -> ValidatedMeasure {
    MeasureSpec::density_only(DensityFamily::PowerLaw {
        a: 1.0,
        exponent: nu,
    })
    .validate()
    .unwrap()
}

/// μ(α) = e^{−1/α}.
pub fn power_exp() -> ValidatedMeasure {
    MeasureSpec::density_only(DensityFamily::PowerExponential {
        a: 1.0,
        gamma: 0.0,
        beta: 1.0,
    })
    .validate()
    .unwrap()
}

/// Step measure with both jump sequences of the two-sided construction:
/// β₀ = ν₀ = 0.3, βₙ = 0.3·0.5ⁿ ↓ 0 with weights 0.5·0.5ⁿ, and
/// νₙ = 1 − 0.7·0.5ⁿ ↑ 1 with weights 0.25·0.5ⁿ. Both weight sequences are
/// geometric, hence summable.
pub fn geometric_two_sided() -> ValidatedMeasure {
    MeasureSpec {
        atoms: vec![
            AtomFamily::Geometric(GeometricFamily {
                direction: Direction::TowardZero,
                base_location: 0.3,
                location_ratio: 0.5,
                base_weight: 0.5,
                weight_ratio: 0.5,
                tail_tolerance: 1e-12,
            }),
            AtomFamily::Geometric(GeometricFamily {
                direction: Direction::TowardOne,
                base_location: 0.3,
                location_ratio: 0.5,
                base_weight: 0.25,
                weight_ratio: 0.5,
                tail_tolerance: 1e-12,
            }),
        ],
        density: None,
    }
    .validate()
    .unwrap()
}

/// Ten-atom geometric measure (tail tolerance chosen so exactly ten atoms
/// materialize).
pub fn geometric_ten_atoms() -> ValidatedMeasure {
    let m = MeasureSpec {
        atoms: vec![AtomFamily::Geometric(GeometricFamily {
            direction: Direction::TowardZero,
            base_location: 0.4,
            location_ratio: 0.7,
            base_weight: 0.5,
            weight_ratio: 0.5,
            tail_tolerance: 1e-3,
        })],
        density: None,
    }
    .validate()
    .unwrap();
    assert_eq!(m.atoms().len(), 10);
    m
}

/// Atom plus density, for exercising the mixed extension.
pub fn mixed_measure() -> ValidatedMeasure {
    MeasureSpec {
        atoms: vec![AtomFamily::Explicit(vec![
            AtomSpec::new(0.3, 0.5),
            AtomSpec::new(0.8, 0.25),
        ])],
        density: Some(DensityFamily::PowerLaw {
            a: 1.0,
            exponent: 1.0,
        }),
    }
    .validate()
    .unwrap()
}

/// The five fixture measures used by the monotonicity and normalization
/// criteria.
pub fn cm_fixtures() -> Vec<(&'static str, ValidatedMeasure)> {
    vec![
        ("delta_half", delta_half()),
        ("const_density", const_density()),
        ("power_law_1", power_law(1.0)),
        ("power_exponential", power_exp()),
        ("geometric_two_sided", geometric_two_sided()),
    ]
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

#[test]
fn erfcx_oracle_self_test() {
    // values from a 30-digit reference computation
    let cases = [
        (0.0, 1.0),
        (0.3, 0.734_599_334_567_655_1),
        (0.5, 0.615_690_344_192_925_9),
        (1.0, 0.427_583_576_155_807),
        (1.25, 0.367_822_916_452_361_1),
        (2.0, 0.255_395_676_310_505_74),
        (5.0, 0.110_704_637_733_068_63),
        (10.0, 0.056_140_992_743_822_59),
        (27.0, 0.020_881_607_990_420_94),
    ];
    for (x, expected) in cases {
        let got = erfcx(x);
        assert!(
            (got - expected).abs() <= 1e-14 * expected.max(1e-300),
            "erfcx({x}) = {got}, want {expected}"
        );
    }
}
