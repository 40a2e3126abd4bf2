//! The positive measure ρ on [0,1) driving the distributed-order derivative.
//!
//! A measure is specified as a collection of atom families (explicit atoms
//! and/or truncated geometric generators accumulating at 0 or at 1) plus an
//! optional density μ(α). Validation materializes the generators, checks
//! every structural invariant and records the discarded tail mass, after
//! which the measure is immutable and safe to share across threads.

use crate::error::{Error, Result};
use crate::quad::{integrate_adaptive, QuadConfig};

/// A single atom: mass `weight` at fractional order `location` ∈ (0,1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpec {
    pub location: f64,
    pub weight: f64,
}

impl AtomSpec {
    pub fn new(location: f64, weight: f64) -> Self {
        AtomSpec { location, weight }
    }
}

/// Which endpoint a geometric atom family accumulates at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Locations b·qⁿ ↓ 0.
    TowardZero,
    /// Locations 1 − (1−b)·qⁿ ↑ 1.
    TowardOne,
}

/// Infinite geometric atom family, truncated so the discarded mass stays
/// below `tail_tolerance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricFamily {
    pub direction: Direction,
    /// First location b ∈ (0,1).
    pub base_location: f64,
    /// Location ratio q ∈ (0,1).
    pub location_ratio: f64,
    /// First weight w > 0.
    pub base_weight: f64,
    /// Weight ratio s ∈ (0,1); weights w·sⁿ are summable by construction.
    pub weight_ratio: f64,
    /// Bound on the truncated tail mass.
    pub tail_tolerance: f64,
}

/// One group of atoms: either written out or generated.
#[derive(Debug, Clone, PartialEq)]
pub enum AtomFamily {
    Explicit(Vec<AtomSpec>),
    Geometric(GeometricFamily),
}

/// Density part μ(α) of the measure.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityFamily {
    /// μ(α) = c.
    Constant(f64),
    /// μ(α) = a·α^ν with ν > −1 (ν ∈ (−1,0) gives an integrable singularity).
    PowerLaw { a: f64, exponent: f64 },
    /// μ(α) = a·α^γ·e^{−β/α}, vanishing to all orders at α = 0.
    PowerExponential { a: f64, gamma: f64, beta: f64 },
    /// Piecewise-linear table of (α, μ(α)) points; zero outside the table.
    Tabulated(Vec<(f64, f64)>),
}

impl DensityFamily {
    // negated comparisons also reject NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn check_params(&self) -> Result<()> {
        match self {
            DensityFamily::Constant(c) => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::NonPositiveWeight(format!("constant density c={c}")));
                }
            }
            DensityFamily::PowerLaw { a, exponent } => {
                if !(a.is_finite() && *a > 0.0) {
                    return Err(Error::NonPositiveWeight(format!("power-law scale a={a}")));
                }
                if !exponent.is_finite() || *exponent <= -1.0 {
                    return Err(Error::InfiniteMass(format!(
                        "power-law exponent {exponent} <= -1 is not integrable on [0,1]"
                    )));
                }
            }
            DensityFamily::PowerExponential { a, gamma, beta } => {
                if !(a.is_finite() && *a > 0.0) {
                    return Err(Error::NonPositiveWeight(format!(
                        "power-exponential scale a={a}"
                    )));
                }
                if !(beta.is_finite() && *beta > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "power-exponential beta={beta} must be > 0"
                    )));
                }
                if !gamma.is_finite() || *gamma <= -1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "power-exponential gamma={gamma} must be > -1"
                    )));
                }
            }
            DensityFamily::Tabulated(points) => {
                if points.len() < 2 {
                    return Err(Error::InvalidParameter(
                        "tabulated density needs at least two points".into(),
                    ));
                }
                for w in points.windows(2) {
                    if !(w[0].0 < w[1].0) {
                        return Err(Error::InvalidParameter(
                            "tabulated density grid must be strictly increasing".into(),
                        ));
                    }
                }
                for &(x, y) in points {
                    if !(0.0..=1.0).contains(&x) || !x.is_finite() {
                        return Err(Error::InvalidParameter(format!(
                            "tabulated density abscissa {x} outside [0,1]"
                        )));
                    }
                    if !y.is_finite() || y < 0.0 {
                        return Err(Error::NonPositiveWeight(format!(
                            "tabulated density value {y} at alpha={x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Linear interpolation of a table; zero outside its support.
    fn interp(points: &[(f64, f64)], x: f64) -> f64 {
        let first = points[0].0;
        let last = points[points.len() - 1].0;
        if x <= first || x >= last {
            if x == first {
                return points[0].1;
            }
            if x == last {
                return points[points.len() - 1].1;
            }
            return 0.0;
        }
        let i = points.partition_point(|p| p.0 <= x) - 1;
        let (x0, y0) = points[i];
        let (x1, y1) = points[i + 1];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// ∫ f(α)·μ(α) dα over [lo, hi] ⊆ [0, 1]. `alpha_seeds` are break
    /// points (in α) marking where `f` concentrates; they get transformed
    /// along with the variable.
    pub fn integrate_against<F: Fn(f64) -> f64>(
        &self,
        f: F,
        lo: f64,
        hi: f64,
        alpha_seeds: &[f64],
        cfg: &QuadConfig,
    ) -> Result<f64> {
        match self {
            DensityFamily::Constant(c) => {
                let c = *c;
                integrate_adaptive(|a| c * f(a), lo, hi, alpha_seeds, cfg).map(|e| e.value)
            }
            DensityFamily::PowerLaw { a, exponent } => {
                // Substituting α = u^{1/(1+ν)} absorbs the α^ν factor exactly,
                // removing the endpoint singularity for ν ∈ (−1, 0).
                let nu = *exponent;
                let inv = 1.0 / (1.0 + nu);
                let seeds: Vec<f64> = alpha_seeds.iter().map(|s| s.powf(1.0 + nu)).collect();
                integrate_adaptive(
                    |u| f(u.powf(inv)),
                    lo.powf(1.0 + nu),
                    hi.powf(1.0 + nu),
                    &seeds,
                    cfg,
                )
                .map(|e| e.value * a * inv)
            }
            DensityFamily::PowerExponential { a, gamma, beta } => {
                let (a, g, b) = (*a, *gamma, *beta);
                // The density switches on around α ≈ β/log(1/ε_machine);
                // cut panels there so the transition is never skipped over.
                let mut seeds: Vec<f64> = alpha_seeds.to_vec();
                let mut s = b / 36.7 / 8.0;
                while s < hi {
                    seeds.push(s);
                    s *= 2.0;
                }
                integrate_adaptive(
                    |al| f(al) * a * (g * al.ln() - b / al).exp(),
                    lo,
                    hi,
                    &seeds,
                    cfg,
                )
                .map(|e| e.value)
            }
            DensityFamily::Tabulated(points) => {
                let mut seeds: Vec<f64> = alpha_seeds.to_vec();
                seeds.extend(points.iter().map(|p| p.0));
                let lo = lo.max(points[0].0);
                let hi = hi.min(points[points.len() - 1].0);
                integrate_adaptive(|al| f(al) * Self::interp(points, al), lo, hi, &seeds, cfg)
                    .map(|e| e.value)
            }
        }
    }
}

/// Full measure specification before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MeasureSpec {
    pub atoms: Vec<AtomFamily>,
    pub density: Option<DensityFamily>,
}

impl MeasureSpec {
    pub fn single_atom(location: f64, weight: f64) -> Self {
        MeasureSpec {
            atoms: vec![AtomFamily::Explicit(vec![AtomSpec::new(location, weight)])],
            density: None,
        }
    }

    pub fn density_only(density: DensityFamily) -> Self {
        MeasureSpec {
            atoms: Vec::new(),
            density: Some(density),
        }
    }

    /// Validate with the default quadrature tolerances.
    pub fn validate(&self) -> Result<ValidatedMeasure> {
        self.validate_with(QuadConfig::default())
    }

    /// Materialize generators, check all invariants and precompute masses.
    pub fn validate_with(&self, quad: QuadConfig) -> Result<ValidatedMeasure> {
        let mut atoms: Vec<AtomSpec> = Vec::new();
        let mut tail_bound = 0.0f64;

        // A lone atom exactly at 0 is reported as mass-at-zero rather than
        // a generic range violation.
        let only_mass_is_single_zero_atom = self.density.is_none()
            && self.atoms.len() == 1
            && matches!(&self.atoms[0], AtomFamily::Explicit(v)
                        if v.len() == 1 && v[0].location == 0.0);
        if only_mass_is_single_zero_atom {
            return Err(Error::MassAtZeroOnly);
        }

        for family in &self.atoms {
            match family {
                AtomFamily::Explicit(list) => {
                    for atom in list {
                        check_atom(*atom)?;
                        atoms.push(*atom);
                    }
                }
                AtomFamily::Geometric(g) => {
                    tail_bound += materialize_geometric(g, &mut atoms)?;
                }
            }
        }

        if let Some(d) = &self.density {
            d.check_params()?;
        }
        if atoms.is_empty() && self.density.is_none() {
            return Err(Error::EmptyMeasure);
        }

        atoms.sort_by(|a, b| a.location.partial_cmp(&b.location).unwrap());
        let atom_mass: f64 = atoms.iter().map(|a| a.weight).sum();
        let density_mass = match &self.density {
            Some(d) => d.integrate_against(|_| 1.0, 0.0, 1.0, &[], &quad)?,
            None => 0.0,
        };
        let total = atom_mass + density_mass;
        if !total.is_finite() {
            return Err(Error::InfiniteMass(format!("total mass {total}")));
        }
        if total <= 0.0 {
            return Err(Error::EmptyMeasure);
        }

        Ok(ValidatedMeasure {
            atoms,
            density: self.density.clone(),
            atom_mass,
            density_mass,
            tail_bound,
            quad,
        })
    }
}

fn check_atom(atom: AtomSpec) -> Result<()> {
    if !atom.weight.is_finite() || atom.weight <= 0.0 {
        return Err(Error::NonPositiveWeight(format!(
            "atom at {} has weight {}",
            atom.location, atom.weight
        )));
    }
    if !atom.location.is_finite() || atom.location <= 0.0 || atom.location >= 1.0 {
        return Err(Error::AtomOutOfRange(format!(
            "atom location {}",
            atom.location
        )));
    }
    Ok(())
}

/// Truncate a geometric family, push its atoms, return the tail-mass bound.
fn materialize_geometric(g: &GeometricFamily, atoms: &mut Vec<AtomSpec>) -> Result<f64> {
    if !(g.base_location.is_finite() && g.base_location > 0.0 && g.base_location < 1.0) {
        return Err(Error::AtomOutOfRange(format!(
            "geometric base location {}",
            g.base_location
        )));
    }
    for (name, v) in [
        ("location_ratio", g.location_ratio),
        ("weight_ratio", g.weight_ratio),
    ] {
        if !(v.is_finite() && v > 0.0 && v < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "{name}={v} must be in (0,1)"
            )));
        }
    }
    if !(g.base_weight.is_finite() && g.base_weight > 0.0) {
        return Err(Error::NonPositiveWeight(format!(
            "geometric base weight {}",
            g.base_weight
        )));
    }
    if !(g.tail_tolerance.is_finite() && g.tail_tolerance > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tail tolerance {} must be > 0",
            g.tail_tolerance
        )));
    }

    const MAX_ATOMS: usize = 1_000_000;
    let mut n = 0usize;
    let mut weight = g.base_weight;
    loop {
        // remaining tail starting at index n: w·sⁿ/(1−s)
        let tail = weight / (1.0 - g.weight_ratio);
        if n > 0 && tail < g.tail_tolerance {
            return Ok(tail);
        }
        if n >= MAX_ATOMS {
            return Err(Error::InvalidParameter(format!(
                "geometric family needs more than {MAX_ATOMS} atoms to reach tail \
                 tolerance {:e}",
                g.tail_tolerance
            )));
        }
        let location = match g.direction {
            Direction::TowardZero => g.base_location * g.location_ratio.powi(n as i32),
            Direction::TowardOne => 1.0 - (1.0 - g.base_location) * g.location_ratio.powi(n as i32),
        };
        if location <= 0.0 || location >= 1.0 {
            return Err(Error::AtomOutOfRange(format!(
                "generated atom {n} at {location} left (0,1) within f64 resolution; \
                 tighten tail_tolerance"
            )));
        }
        atoms.push(AtomSpec::new(location, weight));
        weight *= g.weight_ratio;
        n += 1;
    }
}

/// A measure whose invariants were all checked; atoms are materialized and
/// sorted by location, masses are precomputed. Immutable thereafter.
#[derive(Debug, Clone)]
pub struct ValidatedMeasure {
    atoms: Vec<AtomSpec>,
    density: Option<DensityFamily>,
    atom_mass: f64,
    density_mass: f64,
    tail_bound: f64,
    quad: QuadConfig,
}

impl ValidatedMeasure {
    pub fn atoms(&self) -> &[AtomSpec] {
        &self.atoms
    }

    pub fn density(&self) -> Option<&DensityFamily> {
        self.density.as_ref()
    }

    /// Total mass ∫₀¹ dρ = atom mass + density mass.
    pub fn total_mass(&self) -> f64 {
        self.atom_mass + self.density_mass
    }

    pub fn atom_mass(&self) -> f64 {
        self.atom_mass
    }

    pub fn density_mass(&self) -> f64 {
        self.density_mass
    }

    /// Upper bound on the atom mass discarded by generator truncation.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn quad_config(&self) -> &QuadConfig {
        &self.quad
    }

    /// Moment generating function M(z) = ∫₀¹ e^{αz} dρ(α).
    ///
    /// M(0) equals the total mass; M is increasing and convex in z.
    pub fn moment_gf(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::DomainError(format!("moment_gf at z={z}")));
        }
        self.integrate_exp_weighted(z, |_| 1.0)
    }

    /// ∫₀¹ e^{αz}·g(α) dρ(α), the common shape of every kernel integral.
    /// Atoms are summed exactly; the density part runs through the shared
    /// adaptive engine with seeds at the decay scale of e^{αz}.
    ///
    /// For strongly negative z the weight is concentrated on
    /// α ∈ [0, O(1/|z|)] and the domain is truncated at 60/|z|: the
    /// discarded part is bounded by e^{−60}·mass·sup|g|, far below every
    /// tolerance in the crate, while the truncation keeps the panel count
    /// flat no matter how extreme z gets (the spectral tails push z below
    /// −1e12).
    pub(crate) fn integrate_exp_weighted<G: Fn(f64) -> f64>(&self, z: f64, g: G) -> Result<f64> {
        let mut acc = 0.0;
        for atom in &self.atoms {
            let e = atom.location * z;
            // exp underflow is the correct limit here
            acc += atom.weight * e.exp() * g(atom.location);
        }
        if let Some(d) = &self.density {
            let hi = if z < -64.0 { 60.0 / -z } else { 1.0 };
            let seeds = crate::quad::exp_weight_seeds(z);
            acc += d.integrate_against(|al| (al * z).exp() * g(al), 0.0, hi, &seeds, &self.quad)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn atom_at_one_is_rejected() {
        let err = MeasureSpec::single_atom(1.0, 1.0).validate().unwrap_err();
        assert!(matches!(err, Error::AtomOutOfRange(_)));
    }

    #[test]
    fn atom_at_zero_only_is_mass_at_zero() {
        let err = MeasureSpec::single_atom(0.0, 1.0).validate().unwrap_err();
        assert_eq!(err, Error::MassAtZeroOnly);
    }

    #[test]
    fn atom_at_zero_mixed_is_out_of_range() {
        let spec = MeasureSpec {
            atoms: vec![AtomFamily::Explicit(vec![
                AtomSpec::new(0.0, 1.0),
                AtomSpec::new(0.5, 1.0),
            ])],
            density: None,
        };
        assert!(matches!(
            spec.validate().unwrap_err(),
            Error::AtomOutOfRange(_)
        ));
    }

    #[test]
    fn single_atom_valid() {
        let m = MeasureSpec::single_atom(0.5, 1.0).validate().unwrap();
        assert_eq!(m.total_mass(), 1.0);
        assert_eq!(m.atoms().len(), 1);
    }

    #[test]
    fn non_positive_weight_rejected() {
        let err = MeasureSpec::single_atom(0.5, 0.0).validate().unwrap_err();
        assert!(matches!(err, Error::NonPositiveWeight(_)));
        let err = MeasureSpec::single_atom(0.5, -1.0).validate().unwrap_err();
        assert!(matches!(err, Error::NonPositiveWeight(_)));
    }

    #[test]
    fn empty_measure_rejected() {
        let err = MeasureSpec::default().validate().unwrap_err();
        assert_eq!(err, Error::EmptyMeasure);
    }

    #[test]
    fn geometric_family_truncates_to_forty_atoms_with_unit_mass() {
        let spec = MeasureSpec {
            atoms: vec![AtomFamily::Geometric(GeometricFamily {
                direction: Direction::TowardZero,
                base_location: 0.3,
                location_ratio: 0.5,
                base_weight: 0.5,
                weight_ratio: 0.5,
                tail_tolerance: 1e-12,
            })],
            density: None,
        };
        let m = spec.validate().unwrap();
        // Σ 0.5·0.5ⁿ = 1, truncated when tail 0.5ⁿ < 1e−12 → 40 atoms
        assert_eq!(m.atoms().len(), 40);
        assert!((m.total_mass() - 1.0).abs() < 1e-11);
        assert!(m.tail_bound() < 1e-12);
    }

    #[test]
    fn geometric_tail_bound_dominates_true_discarded_mass() {
        let g = GeometricFamily {
            direction: Direction::TowardZero,
            base_location: 0.4,
            location_ratio: 0.6,
            base_weight: 0.7,
            weight_ratio: 0.3,
            tail_tolerance: 1e-10,
        };
        let m = MeasureSpec {
            atoms: vec![AtomFamily::Geometric(g)],
            density: None,
        }
        .validate()
        .unwrap();
        let n = m.atoms().len();
        // sum the true tail far beyond the truncation point
        let true_tail: f64 = (n..n + 400)
            .map(|k| g.base_weight * g.weight_ratio.powi(k as i32))
            .sum();
        assert!(m.tail_bound() >= true_tail * (1.0 - 1e-12));
    }

    #[test]
    fn toward_one_locations_increase_and_stay_below_one() {
        let spec = MeasureSpec {
            atoms: vec![AtomFamily::Geometric(GeometricFamily {
                direction: Direction::TowardOne,
                base_location: 0.3,
                location_ratio: 0.5,
                base_weight: 0.25,
                weight_ratio: 0.5,
                tail_tolerance: 1e-12,
            })],
            density: None,
        };
        let m = spec.validate().unwrap();
        for w in m.atoms().windows(2) {
            assert!(w[0].location < w[1].location);
        }
        assert!(m.atoms().iter().all(|a| a.location < 1.0));
    }

    #[test]
    fn total_mass_examples() {
        let m = MeasureSpec::single_atom(0.5, 2.0).validate().unwrap();
        assert_eq!(m.total_mass(), 2.0);

        let m = MeasureSpec::density_only(DensityFamily::Constant(1.0))
            .validate()
            .unwrap();
        assert!(rel(m.total_mass(), 1.0) < 1e-12);

        // ∫₀¹ α dα = 1/2
        let m = MeasureSpec::density_only(DensityFamily::PowerLaw {
            a: 1.0,
            exponent: 1.0,
        })
        .validate()
        .unwrap();
        assert!(rel(m.total_mass(), 0.5) < 1e-12);
    }

    #[test]
    fn total_mass_is_additive_over_parts() {
        let spec = MeasureSpec {
            atoms: vec![AtomFamily::Explicit(vec![AtomSpec::new(0.3, 0.7)])],
            density: Some(DensityFamily::PowerLaw {
                a: 2.0,
                exponent: -0.5,
            }),
        };
        let m = spec.validate().unwrap();
        let total = m.total_mass();
        assert!(rel(total, m.atom_mass() + m.density_mass()) < 1e-12);
        // ∫ 2 α^{-1/2} dα = 4
        assert!(rel(m.density_mass(), 4.0) < 1e-9);
    }

    #[test]
    fn moment_gf_examples() {
        // δ_α: M(z) = e^{αz}
        let m = MeasureSpec::single_atom(0.25, 1.0).validate().unwrap();
        for &z in &[-3.0, 0.0, 1.7, 50.0] {
            assert!(rel(m.moment_gf(z).unwrap(), (0.25 * z).exp()) < 1e-13);
        }

        // constant density: M(z) = (e^z − 1)/z for z ≠ 0
        let m = MeasureSpec::density_only(DensityFamily::Constant(1.0))
            .validate()
            .unwrap();
        for &z in &[-10.0f64, -0.5, 0.7, 4.0, 30.0] {
            let exact = (z.exp() - 1.0) / z;
            assert!(rel(m.moment_gf(z).unwrap(), exact) < 1e-10, "z={z}");
        }

        // any measure: M(0) = total mass
        assert!(rel(m.moment_gf(0.0).unwrap(), m.total_mass()) < 1e-12);
    }

    #[test]
    fn moment_gf_far_negative_z_uses_truncated_domain_exactly() {
        // constant density: M(z) = (1 - e^z)/(-z); at z = -5000 the weight
        // lives entirely on alpha < 0.012 and the truncation must not bite
        let m = MeasureSpec::density_only(DensityFamily::Constant(1.0))
            .validate()
            .unwrap();
        let z = -5000.0;
        let exact = 1.0 / 5000.0;
        assert!(rel(m.moment_gf(z).unwrap(), exact) < 1e-10);
    }

    #[test]
    fn moment_gf_is_monotone_in_z() {
        let specs = [
            MeasureSpec::single_atom(0.5, 1.0),
            MeasureSpec::density_only(DensityFamily::PowerLaw {
                a: 1.0,
                exponent: 1.0,
            }),
        ];
        for spec in specs {
            let m = spec.validate().unwrap();
            let zs = [-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0];
            let vals: Vec<f64> = zs.iter().map(|&z| m.moment_gf(z).unwrap()).collect();
            for w in vals.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn power_exponential_mass_matches_reference() {
        // ∫₀¹ e^{−1/α} dα = 0.14849550677592205..., an incomplete-gamma value
        let m = MeasureSpec::density_only(DensityFamily::PowerExponential {
            a: 1.0,
            gamma: 0.0,
            beta: 1.0,
        })
        .validate()
        .unwrap();
        assert!(rel(m.total_mass(), 0.148_495_506_775_922_05) < 1e-9);
    }

    #[test]
    fn tabulated_density_mass_is_trapezoid_exact() {
        let m = MeasureSpec::density_only(DensityFamily::Tabulated(vec![
            (0.0, 0.0),
            (0.5, 2.0),
            (1.0, 0.0),
        ]))
        .validate()
        .unwrap();
        assert!(rel(m.total_mass(), 1.0) < 1e-12);
    }

    #[test]
    fn tabulated_rejects_bad_tables() {
        let err = MeasureSpec::density_only(DensityFamily::Tabulated(vec![(0.0, 1.0)]))
            .validate()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        let err = MeasureSpec::density_only(DensityFamily::Tabulated(vec![(0.0, 1.0), (0.0, 2.0)]))
            .validate()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        let err =
            MeasureSpec::density_only(DensityFamily::Tabulated(vec![(0.0, 1.0), (0.5, -2.0)]))
                .validate()
                .unwrap_err();
        assert!(matches!(err, Error::NonPositiveWeight(_)));
    }

    #[test]
    fn power_law_divergent_exponent_is_infinite_mass() {
        let err = MeasureSpec::density_only(DensityFamily::PowerLaw {
            a: 1.0,
            exponent: -1.0,
        })
        .validate()
        .unwrap_err();
        assert!(matches!(err, Error::InfiniteMass(_)));
    }
}
