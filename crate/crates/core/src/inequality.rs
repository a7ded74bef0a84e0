//! Verification reports for the measure slicing inequality, the stability
//! inequalities and the two supporting lemmas.
//!
//! Every quadrature quantity entering a report is an [`Estimate`] (value at
//! the refined resolution, error = cross-resolution difference). A report's
//! tolerance is the first-order propagation of those errors through the
//! right- and left-hand sides, and `passed ⇔ lhs ≤ rhs + tolerance`.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::body::Body;
use crate::density::Density;
use crate::error::{Error, Result};
use crate::quadrature::{unit_interval_rule, Estimate, Estimator, QuadratureSpec};
use crate::search::{half_sphere_grid, max_section_with};
use crate::specfun::{gamma_lemma_sides, log_convexity_sides, sharp_volume_constant};

/// Lower bound imposed on every computed stability slack.
pub const EPSILON_FLOOR: f64 = 1e-12;

/// Relative slack for comparisons that are equalities for some inputs.
const ROUNDING_SLACK: f64 = 1e-12;

/// Gauss–Legendre points used by [`lemma_ell_gap`].
pub const LEMMA_NODES: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub bound_constant: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub inputs_digest: String,
}

impl InequalityReport {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        lhs: f64,
        rhs: f64,
        bound_constant: f64,
        tolerance: f64,
        inputs_digest: String,
    ) -> Result<Self> {
        for (what, v) in [("lhs", lhs), ("rhs", rhs), ("tolerance", tolerance)] {
            if !v.is_finite() {
                return Err(Error::Numerical(format!("report {what} is {v}")));
            }
        }
        let tolerance = tolerance.abs();
        Ok(InequalityReport {
            name: name.into(),
            n,
            lhs,
            rhs,
            bound_constant,
            margin: rhs - lhs,
            tolerance,
            passed: lhs <= rhs + tolerance,
            epsilon: None,
            inputs_digest,
        })
    }

    fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    /// Margin exceeds the tolerance, i.e. the inequality holds with room to spare.
    pub fn strictly_passed(&self) -> bool {
        self.margin > self.tolerance
    }
}

/// Short SHA-256 digest of the canonical JSON of `inputs`.
pub fn digest<T: Serialize>(inputs: &T) -> String {
    let bytes = serde_json::to_vec(inputs).expect("inputs serialize to JSON");
    hex::encode(&Sha256::digest(&bytes)[..8])
}

/// `n/(n−1)`, the constant of the measure slicing inequality.
pub fn slicing_constant(n: usize) -> f64 {
    n as f64 / (n as f64 - 1.0)
}

fn same_dimension(bodies: &[&Body], density: Option<&Density>) -> Result<usize> {
    let n = bodies[0].dimension();
    for b in &bodies[1..] {
        Error::check_dimension(n, b.dimension())?;
    }
    if let Some(f) = density {
        Error::check_dimension(n, f.dimension())?;
    }
    Ok(n)
}

/// `V^{p}` and the first-order error of that power.
fn power_with_error(v: &Estimate, p: f64) -> (f64, f64) {
    let value = v.value.powf(p);
    (value, (p * v.value.powf(p - 1.0) * v.error).abs())
}

/// `μ(K) ≤ n/(n−1) · max_ξ μ(K ∩ ξ⊥) · Vol_n(K)^{1/n}`.
pub fn hyperplane_report(
    body: &Body,
    density: &Density,
    spec: &QuadratureSpec,
    search_resolution: usize,
) -> Result<InequalityReport> {
    let n = same_dimension(&[body], Some(density))?;
    let est = Estimator::new(n, *spec)?;
    let mu = est.measure(body, density)?;
    let vol = est.volume(body)?;
    let best = max_section_with(est.coarse(), body, density, search_resolution)?;
    let section = est.section_measure(body, density, &best.direction)?;
    let c = slicing_constant(n);
    let (root, root_err) = power_with_error(&vol, 1.0 / n as f64);
    let rhs = c * section.value * root;
    let tolerance = mu.error + c * (section.error * root + section.value * root_err);
    let inputs = digest(&("hyperplane", body, density, spec, search_resolution));
    InequalityReport::new("hyperplane", n, mu.value, rhs, c, tolerance, inputs)
}

/// `Vol_n(K)^{(n−1)/n} / max_ξ Vol_{n−1}(K ∩ ξ⊥)`, with its error estimate.
pub fn volume_hyperplane_ratio_estimate(
    body: &Body,
    spec: &QuadratureSpec,
    search_resolution: usize,
) -> Result<Estimate> {
    let n = body.dimension();
    let lebesgue = Density::lebesgue(n)?;
    let est = Estimator::new(n, *spec)?;
    let vol = est.volume(body)?;
    let best = max_section_with(est.coarse(), body, &lebesgue, search_resolution)?;
    let section = est.section_measure(body, &lebesgue, &best.direction)?;
    let p = (n as f64 - 1.0) / n as f64;
    let (num, num_err) = power_with_error(&vol, p);
    let ratio = num / section.value;
    let error = num_err / section.value + ratio * section.error / section.value;
    let coarse = vol.coarse.powf(p) / section.coarse;
    Ok(Estimate {
        value: ratio,
        coarse,
        error,
    })
}

pub fn volume_hyperplane_ratio(body: &Body, spec: &QuadratureSpec, search_resolution: usize) -> Result<f64> {
    Ok(volume_hyperplane_ratio_estimate(body, spec, search_resolution)?.value)
}

/// The volume slicing inequality with its best constant,
/// `Vol_n(K)^{(n−1)/n} / max_ξ Vol_{n−1}(K ∩ ξ⊥) ≤ |B_2^n|^{(n−1)/n} / |B_2^{n−1}|`;
/// equality holds for Euclidean balls.
pub fn volume_ratio_report(
    body: &Body,
    spec: &QuadratureSpec,
    search_resolution: usize,
) -> Result<InequalityReport> {
    let n = body.dimension();
    let ratio = volume_hyperplane_ratio_estimate(body, spec, search_resolution)?;
    let sharp = sharp_volume_constant(n)?;
    let inputs = digest(&("volume_ratio", body, spec, search_resolution));
    // balls attain the constant, so rounding alone can tip them over
    let tolerance = ratio.error + ROUNDING_SLACK * sharp;
    InequalityReport::new("volume_ratio", n, ratio.value, sharp, sharp, tolerance, inputs)
}

/// The slack `ε = max_ξ (μ(K ∩ ξ⊥) − μ(L ∩ ξ⊥))` over a direction grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityEpsilon {
    /// Inflated and floored slack used by the reports.
    pub value: f64,
    /// Grid maximum of the section difference at the refined resolution.
    pub grid_max: f64,
    /// Largest cross-resolution change of a grid difference.
    pub inflation: f64,
    pub direction: Vec<f64>,
}

/// Section and body quantities shared by the stability and difference
/// reports for one ordered pair `(K, L)`.
#[derive(Clone, Debug)]
pub struct PairComparison {
    n: usize,
    mu_k: Estimate,
    mu_l: Estimate,
    vol_k: Estimate,
    vol_l: Estimate,
    epsilon: StabilityEpsilon,
    /// Inflated grid maximum of `|μ(K ∩ ξ⊥) − μ(L ∩ ξ⊥)|`.
    max_abs_difference: f64,
    digest: String,
}

impl PairComparison {
    pub fn compute(
        k: &Body,
        l: &Body,
        density: &Density,
        spec: &QuadratureSpec,
        grid_resolution: usize,
    ) -> Result<Self> {
        let n = same_dimension(&[k, l], Some(density))?;
        let est = Estimator::new(n, *spec)?;
        let grid = half_sphere_grid(n, grid_resolution)?;
        let differences: Vec<(f64, f64)> = grid
            .par_iter()
            .map(|xi| {
                let sk = est.section_measure(k, density, xi)?;
                let sl = est.section_measure(l, density, xi)?;
                Ok((sk.value - sl.value, sk.coarse - sl.coarse))
            })
            .collect::<Result<_>>()?;
        let inflation = differences
            .iter()
            .fold(0.0f64, |m, (fine, coarse)| m.max((fine - coarse).abs()));
        let (arg, grid_max) = differences
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, (d, _))| {
                if *d > bv {
                    (i, *d)
                } else {
                    (bi, bv)
                }
            });
        let max_abs = differences.iter().fold(0.0f64, |m, (d, _)| m.max(d.abs()));
        let epsilon = StabilityEpsilon {
            value: (grid_max + inflation).max(EPSILON_FLOOR),
            grid_max,
            inflation,
            direction: grid[arg].clone(),
        };
        Ok(PairComparison {
            n,
            mu_k: est.measure(k, density)?,
            mu_l: est.measure(l, density)?,
            vol_k: est.volume(k)?,
            vol_l: est.volume(l)?,
            epsilon,
            max_abs_difference: if max_abs > 0.0 { max_abs + inflation } else { 0.0 },
            digest: digest(&(k, l, density, spec, grid_resolution)),
        })
    }

    pub fn epsilon(&self) -> &StabilityEpsilon {
        &self.epsilon
    }

    pub fn measures(&self) -> (Estimate, Estimate) {
        (self.mu_k, self.mu_l)
    }

    pub fn volumes(&self) -> (Estimate, Estimate) {
        (self.vol_k, self.vol_l)
    }

    /// `μ(K) ≤ μ(L) + n/(n−1) · ε · Vol_n(K)^{1/n}`.
    pub fn stability_report(&self) -> Result<InequalityReport> {
        let c = slicing_constant(self.n);
        let eps = self.epsilon.value;
        let (root, root_err) = power_with_error(&self.vol_k, 1.0 / self.n as f64);
        let rhs = self.mu_l.value + c * eps * root;
        let tolerance = self.mu_k.error + self.mu_l.error + c * eps * root_err;
        InequalityReport::new(
            "stability",
            self.n,
            self.mu_k.value,
            rhs,
            c,
            tolerance,
            digest(&("stability", &self.digest)),
        )
        .map(|r| r.with_epsilon(eps))
    }

    /// `|μ(K) − μ(L)| ≤ n/(n−1) · max_ξ |μ(K∩ξ⊥) − μ(L∩ξ⊥)| · max(Vol_n(K), Vol_n(L))^{1/n}`.
    pub fn difference_report(&self) -> Result<InequalityReport> {
        let c = slicing_constant(self.n);
        let d = self.max_abs_difference;
        let larger = if self.vol_k.value >= self.vol_l.value { &self.vol_k } else { &self.vol_l };
        let (root, root_err) = power_with_error(larger, 1.0 / self.n as f64);
        let lhs = (self.mu_k.value - self.mu_l.value).abs();
        let rhs = c * d * root;
        let tolerance = self.mu_k.error + self.mu_l.error + c * d * root_err;
        InequalityReport::new(
            "difference",
            self.n,
            lhs,
            rhs,
            c,
            tolerance,
            digest(&("difference", &self.digest)),
        )
        .map(|r| r.with_epsilon(d))
    }
}

pub fn stability_report(
    k: &Body,
    l: &Body,
    density: &Density,
    spec: &QuadratureSpec,
    grid_resolution: usize,
) -> Result<InequalityReport> {
    PairComparison::compute(k, l, density, spec, grid_resolution)?.stability_report()
}

pub fn difference_report(
    k: &Body,
    l: &Body,
    density: &Density,
    spec: &QuadratureSpec,
    grid_resolution: usize,
) -> Result<InequalityReport> {
    PairComparison::compute(k, l, density, spec, grid_resolution)?.difference_report()
}

/// The volume stability inequality `Vol(K)^{(n−1)/n} ≤ Vol(L)^{(n−1)/n} + ε`
/// together with the weaker measure form `Vol(K) ≤ Vol(L) + n/(n−1)·ε·Vol(K)^{1/n}`
/// evaluated with the same `ε`. The first implies the second through the mean
/// value theorem for `t ↦ t^{n/(n−1)}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeStabilityReport {
    pub volume_form: InequalityReport,
    pub measure_form: InequalityReport,
}

impl VolumeStabilityReport {
    /// `volume_form.passed ⇒ measure_form.passed`.
    pub fn implication_holds(&self) -> bool {
        !self.volume_form.passed || self.measure_form.passed
    }
}

pub fn volume_stability_report(
    k: &Body,
    l: &Body,
    spec: &QuadratureSpec,
    grid_resolution: usize,
) -> Result<VolumeStabilityReport> {
    let n = same_dimension(&[k, l], None)?;
    let lebesgue = Density::lebesgue(n)?;
    let pair = PairComparison::compute(k, l, &lebesgue, spec, grid_resolution)?;
    let eps = pair.epsilon.value;
    let p = (n as f64 - 1.0) / n as f64;
    let (vk, vk_err) = power_with_error(&pair.vol_k, p);
    let (vl, vl_err) = power_with_error(&pair.vol_l, p);
    let volume_form = InequalityReport::new(
        "volume_stability",
        n,
        vk,
        vl + eps,
        1.0,
        vk_err + vl_err,
        digest(&("volume_stability", &pair.digest)),
    )?
    .with_epsilon(eps);

    let c = slicing_constant(n);
    let (root, root_err) = power_with_error(&pair.vol_k, 1.0 / n as f64);
    // h(t) = t^{n/(n−1)} maps the volume form onto the measure form; its
    // derivative at the larger argument bounds how the tolerance transfers
    let h_slope = c * (vk.max(vl + eps)).powf(1.0 / (n as f64 - 1.0));
    let measure_form = InequalityReport::new(
        "volume_stability_measure_form",
        n,
        pair.vol_k.value,
        pair.vol_l.value + c * eps * root,
        c,
        (pair.vol_k.error + pair.vol_l.error + c * eps * root_err).max(h_slope * (vk_err + vl_err)),
        digest(&("volume_stability_measure_form", &pair.digest)),
    )?
    .with_epsilon(eps);
    Ok(VolumeStabilityReport {
        volume_form,
        measure_form,
    })
}

/// Both sides of
/// `∫₀^a t^{n−1}α − a∫₀^a t^{n−2}α ≤ ∫₀^b t^{n−1}α − a∫₀^b t^{n−2}α`,
/// each integral by a 64-point Gauss–Legendre rule.
pub fn lemma_ell_gap<F>(n: usize, a: f64, b: f64, alpha: F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    if n < 2 {
        return Err(Error::invalid(format!("dimension must be at least 2, got {n}")));
    }
    for (name, v) in [("a", a), ("b", b)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::invalid(format!("{name} must be positive, got {v}")));
        }
    }
    let (nodes, weights) = unit_interval_rule(LEMMA_NODES);
    let moments = |upper: f64| -> Result<(f64, f64)> {
        let (mut high, mut low) = (0.0, 0.0);
        for (&s, &w) in nodes.iter().zip(&weights) {
            let t = upper * s;
            let value = alpha(t);
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::invalid(format!("alpha({t}) = {value} is not a nonnegative number")));
            }
            high += w * t.powi(n as i32 - 1) * value;
            low += w * t.powi(n as i32 - 2) * value;
        }
        Ok((upper * high, upper * low))
    };
    let (ha, la) = moments(a)?;
    let (hb, lb) = moments(b)?;
    Ok((ha - a * la, hb - a * lb))
}

/// `Σ c_k² t^k`, nonnegative on `t ≥ 0` by construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquaredCoefficientPolynomial {
    coefficients: Vec<f64>,
}

impl SquaredCoefficientPolynomial {
    pub fn from_roots_of_coefficients(raw: &[f64]) -> Self {
        SquaredCoefficientPolynomial {
            coefficients: raw.iter().map(|c| c * c).collect(),
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

pub fn lemma_ell_report(
    n: usize,
    a: f64,
    b: f64,
    alpha: &SquaredCoefficientPolynomial,
    tolerance: f64,
) -> Result<InequalityReport> {
    let (lhs, rhs) = lemma_ell_gap(n, a, b, |t| alpha.eval(t))?;
    let inputs = digest(&("lemma_ell", n, a, b, alpha));
    InequalityReport::new("lemma_ell", n, lhs, rhs, 1.0, tolerance, inputs)
}

/// Both half-integer Gamma inequalities for one `n`, relative tolerance 1e−12.
pub fn gamma_lemma_reports(n: usize) -> Result<[InequalityReport; 2]> {
    let (l1, r1) = gamma_lemma_sides(n)?;
    let (l2, r2) = log_convexity_sides(n)?;
    Ok([
        InequalityReport::new("gamma_lemma", n, l1, r1, 1.0, 1e-12 * r1, digest(&("gamma_lemma", n)))?,
        InequalityReport::new("log_convexity", n, l2, r2, 1.0, 1e-12 * r2, digest(&("log_convexity", n)))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn disc(r: f64) -> Body {
        Body::ball(2, r).unwrap()
    }

    #[test]
    fn hyperplane_ball_volume_example() {
        let ball = Body::ball(3, 1.0).unwrap();
        let f = Density::lebesgue(3).unwrap();
        let r = hyperplane_report(&ball, &f, &QuadratureSpec::for_dimension(3), 16).unwrap();
        assert!((r.lhs - 4.1887902).abs() < 1e-6);
        assert!((r.rhs - 7.5963331).abs() < 1e-6);
        assert_eq!(r.bound_constant, 1.5);
        assert!(r.passed && r.strictly_passed());
    }

    #[test]
    fn hyperplane_gaussian_disc_and_square() {
        let g = Density::gaussian(2, 1.0).unwrap();
        let spec = QuadratureSpec::for_dimension(2);
        let r = hyperplane_report(&disc(1.0), &g, &spec, 16).unwrap();
        assert!((r.lhs - 2.4722415).abs() < 1e-6);
        assert!((r.rhs - 6.0662190).abs() < 1e-6);
        assert!(r.passed);
        let square = Body::cube(2, 1.0).unwrap();
        let r = hyperplane_report(&square, &Density::lebesgue(2).unwrap(), &spec, 64).unwrap();
        assert!((r.lhs - 4.0).abs() < 1e-5);
        assert!((r.rhs - 11.3137085).abs() < 1e-5);
        assert!(r.passed);
    }

    #[test]
    fn volume_ratio_of_balls_is_the_sharp_constant() {
        for (n, expected) in [(2, 0.8862269), (3, 0.8271340), (4, 0.7904305)] {
            let ball = Body::ball(n, 1.0).unwrap();
            let ratio = volume_hyperplane_ratio(&ball, &QuadratureSpec::for_dimension(n), 16).unwrap();
            assert!((ratio - expected).abs() < 1e-6, "n = {n}: {ratio}");
        }
    }

    #[test]
    fn stability_discs() {
        let f = Density::lebesgue(2).unwrap();
        let spec = QuadratureSpec::for_dimension(2);
        let pair = PairComparison::compute(&disc(1.2), &disc(1.0), &f, &spec, 16).unwrap();
        assert!((pair.epsilon().value - 0.4).abs() < 1e-12);
        let r = pair.stability_report().unwrap();
        assert!((r.lhs - 4.5238934).abs() < 1e-6);
        assert!((r.rhs - 4.8431484).abs() < 1e-6);
        assert!(r.passed);
        let d = pair.difference_report().unwrap();
        assert!((d.lhs - 1.3823008).abs() < 1e-6);
        assert!((d.rhs - 1.7015557).abs() < 1e-6);
        assert!(d.passed);
    }

    #[test]
    fn identical_bodies_use_the_floor() {
        let f = Density::gaussian(3, 0.7).unwrap();
        let k = Body::lp_ball(1.5, vec![1.0, 0.8, 1.2]).unwrap();
        let spec = QuadratureSpec::for_dimension(3);
        let pair = PairComparison::compute(&k, &k, &f, &spec, 16).unwrap();
        assert_eq!(pair.epsilon().value, EPSILON_FLOOR);
        let r = pair.stability_report().unwrap();
        let c = slicing_constant(3);
        let root = pair.volumes().0.value.powf(1.0 / 3.0);
        assert_eq!(r.lhs, r.rhs - c * EPSILON_FLOOR * root);
        assert!(r.passed);
        let d = pair.difference_report().unwrap();
        assert_eq!(d.lhs, 0.0);
        assert!(d.passed);
    }

    #[test]
    fn contained_disc_has_floor_epsilon() {
        let g = Density::gaussian(2, 1.0).unwrap();
        let square = Body::cube(2, 1.0).unwrap();
        let spec = QuadratureSpec::for_dimension(2);
        let pair = PairComparison::compute(&disc(1.0), &square, &g, &spec, 32).unwrap();
        assert_eq!(pair.epsilon().value, EPSILON_FLOOR);
        let r = pair.stability_report().unwrap();
        assert!((r.lhs - 2.0 * PI * (1.0 - (-0.5f64).exp())).abs() < 1e-6);
        assert!(r.lhs <= pair.measures().1.value);
        assert!(r.passed);
    }

    #[test]
    fn volume_stability_discs() {
        let spec = QuadratureSpec::for_dimension(2);
        let r = volume_stability_report(&disc(1.2), &disc(1.0), &spec, 16).unwrap();
        assert!((r.volume_form.lhs - 2.1269446).abs() < 1e-6);
        assert!((r.volume_form.rhs - 2.1724539).abs() < 1e-6);
        assert!(r.volume_form.passed && r.measure_form.passed && r.implication_holds());
        let same = volume_stability_report(&disc(1.0), &disc(1.0), &spec, 16).unwrap();
        assert_eq!(same.volume_form.lhs, same.volume_form.rhs - EPSILON_FLOOR);
        assert!(same.volume_form.passed);
    }

    #[test]
    fn volume_stability_nested_balls_in_three_dimensions() {
        let k = Body::ball(3, 1.0).unwrap();
        let l = Body::ball(3, 1.1).unwrap();
        let r = volume_stability_report(&k, &l, &QuadratureSpec::for_dimension(3), 16).unwrap();
        assert_eq!(r.volume_form.epsilon, Some(EPSILON_FLOOR));
        assert!(r.volume_form.passed && r.implication_holds());
        let r = volume_stability_report(&l, &k, &QuadratureSpec::for_dimension(3), 16).unwrap();
        let expected = PI * (1.21 - 1.0);
        assert!((r.volume_form.epsilon.unwrap() - expected).abs() < 1e-9);
        assert!(r.volume_form.passed && r.implication_holds());
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let f = Density::lebesgue(2).unwrap();
        let spec = QuadratureSpec::for_dimension(2);
        let k = Body::ball(3, 1.0).unwrap();
        assert!(matches!(
            stability_report(&k, &disc(1.0), &f, &spec, 16),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lemma_ell_examples() {
        let one = |_: f64| 1.0;
        let (l, r) = lemma_ell_gap(3, 1.0, 2.0, one).unwrap();
        assert!((l + 1.0 / 6.0).abs() < 1e-14 && (r - 2.0 / 3.0).abs() < 1e-14);
        let (l, r) = lemma_ell_gap(3, 2.0, 1.0, one).unwrap();
        assert!((l + 4.0 / 3.0).abs() < 1e-14 && (r + 2.0 / 3.0).abs() < 1e-14);
        let alpha = |t: f64| (3.0 * t).sin().abs() + 0.1;
        let (l, r) = lemma_ell_gap(4, 1.3, 1.3, alpha).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn lemma_ell_rejects_negative_alpha() {
        assert!(lemma_ell_gap(2, 1.0, 2.0, |t| 1.0 - t).is_err());
        assert!(lemma_ell_gap(2, 0.0, 2.0, |_| 1.0).is_err());
    }

    #[test]
    fn squared_coefficient_polynomial() {
        let p = SquaredCoefficientPolynomial::from_roots_of_coefficients(&[1.0, -2.0, 0.5]);
        assert_eq!(p.coefficients(), &[1.0, 4.0, 0.25]);
        assert_eq!(p.eval(2.0), 1.0 + 8.0 + 1.0);
    }

    #[test]
    fn gamma_reports_pass() {
        for n in 2..=50 {
            for r in gamma_lemma_reports(n).unwrap() {
                assert!(r.passed, "{r:?}");
            }
        }
    }

    #[test]
    fn report_invariants() {
        let r = InequalityReport::new("x", 2, 1.0, 0.5, 1.0, 0.6, String::new()).unwrap();
        assert!(r.passed && !r.strictly_passed());
        assert_eq!(r.margin, -0.5);
        let r = InequalityReport::new("x", 2, 1.0, 0.5, 1.0, 0.4, String::new()).unwrap();
        assert!(!r.passed);
        assert!(InequalityReport::new("x", 2, f64::NAN, 0.5, 1.0, 0.4, String::new()).is_err());
    }
}
