//! Polar-coordinate integration of body measures, volumes and central
//! section measures.
//!
//! With `ρ_K(θ) = 1/‖θ‖_K` the radial function,
//!
//! ```text
//! μ(K)      = ∫_{S^{n−1}} ∫_0^{ρ_K(θ)} t^{n−1} f(tθ) dt dθ
//! Vol_n(K)  = (1/n) ∫_{S^{n−1}} ρ_K(θ)^n dθ
//! μ(K ∩ ξ⊥) = ∫_{S^{n−1} ∩ ξ⊥} ∫_0^{ρ_K(θ)} t^{n−2} f(tθ) dt dθ
//! ```
//!
//! Spherical integrals use [`SphereRule`]; each ray uses a Gauss–Legendre
//! rule on `[0, ρ_K(θ)]` with the monomial folded into the integrand.
//! Per-node contributions may be evaluated in parallel but are always summed
//! in node order, so results do not depend on the thread count.

mod frame;
mod legendre;
mod sphere;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use frame::SectionFrame;
pub(crate) use frame::canonical_direction;
pub use legendre::{gauss_legendre, unit_interval_rule};
pub use sphere::SphereRule;

use crate::body::Body;
use crate::density::Density;
use crate::error::{Error, Result};
use crate::vector::{compensated_sum, is_unit, norm};

/// Node counts below which per-node work runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Nodes along a great circle of the sphere rule.
    pub sphere_resolution: usize,
    /// Gauss–Legendre points per ray.
    pub radial_nodes: usize,
    /// Resolution multiplier for the a-posteriori error estimate.
    pub refinement_factor: f64,
}

impl QuadratureSpec {
    pub fn new(sphere_resolution: usize, radial_nodes: usize, refinement_factor: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            sphere_resolution,
            radial_nodes,
            refinement_factor,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Default resolution for top-level integrals in dimension `n`.
    ///
    /// The product rules have `O(m^{n−1})` nodes, so the circle resolution
    /// shrinks with the dimension to keep runtimes comparable.
    pub fn for_dimension(n: usize) -> Self {
        let sphere_resolution = match n {
            0..=2 => 2048,
            3 => 128,
            _ => 40,
        };
        QuadratureSpec {
            sphere_resolution,
            radial_nodes: 12,
            refinement_factor: 2.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sphere_resolution < 8 {
            return Err(Error::invalid(format!(
                "sphere_resolution must be at least 8, got {}",
                self.sphere_resolution
            )));
        }
        if self.radial_nodes < 4 {
            return Err(Error::invalid(format!(
                "radial_nodes must be at least 4, got {}",
                self.radial_nodes
            )));
        }
        if !(self.refinement_factor.is_finite() && self.refinement_factor > 1.0) {
            return Err(Error::invalid(format!(
                "refinement_factor must exceed 1, got {}",
                self.refinement_factor
            )));
        }
        Ok(())
    }

    /// Both resolutions multiplied by the refinement factor, rounded up.
    pub fn refined(&self) -> Self {
        let scale = |v: usize| ((v as f64 * self.refinement_factor).ceil() as usize).max(v + 1);
        QuadratureSpec {
            sphere_resolution: scale(self.sphere_resolution),
            radial_nodes: scale(self.radial_nodes),
            refinement_factor: self.refinement_factor,
        }
    }
}

/// A quadrature value together with its cross-resolution error estimate.
///
/// `value` is taken at the refined resolution and `error = |value − coarse|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub coarse: f64,
    pub error: f64,
}

impl Estimate {
    pub fn from_pair(coarse: f64, fine: f64) -> Result<Self> {
        if !(coarse.is_finite() && fine.is_finite()) {
            return Err(Error::Numerical(format!(
                "non-finite quadrature value (coarse {coarse}, fine {fine})"
            )));
        }
        Ok(Estimate {
            value: fine,
            coarse,
            error: (fine - coarse).abs(),
        })
    }

    /// An exactly known quantity.
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            coarse: value,
            error: 0.0,
        }
    }
}

pub fn sphere_rule(n: usize, spec: &QuadratureSpec) -> Result<SphereRule> {
    spec.validate()?;
    SphereRule::new(n, spec.sphere_resolution)
}

pub fn frame(xi: &[f64]) -> Result<SectionFrame> {
    SectionFrame::new(xi)
}

/// Precomputed rules for one dimension and one [`QuadratureSpec`].
#[derive(Clone, Debug)]
pub struct Integrator {
    dimension: usize,
    spec: QuadratureSpec,
    sphere: SphereRule,
    subsphere: SphereRule,
    radial_nodes: Vec<f64>,
    radial_weights: Vec<f64>,
}

fn check_top_dimension(n: usize) -> Result<()> {
    if (2..=4).contains(&n) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "polar integration is supported for n in 2..=4, got n = {n}"
        )))
    }
}

impl Integrator {
    pub fn new(dimension: usize, spec: QuadratureSpec) -> Result<Self> {
        check_top_dimension(dimension)?;
        spec.validate()?;
        let (radial_nodes, radial_weights) = unit_interval_rule(spec.radial_nodes);
        Ok(Integrator {
            dimension,
            spec,
            sphere: SphereRule::new(dimension, spec.sphere_resolution)?,
            subsphere: SphereRule::new(dimension - 1, spec.sphere_resolution)?,
            radial_nodes,
            radial_weights,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    pub fn refined(&self) -> Result<Self> {
        Self::new(self.dimension, self.spec.refined())
    }

    fn check_inputs(&self, body: &Body, density: Option<&Density>) -> Result<()> {
        Error::check_dimension(self.dimension, body.dimension())?;
        if let Some(f) = density {
            Error::check_dimension(self.dimension, f.dimension())?;
        }
        Ok(())
    }

    /// `∫_0^1 s^power f(r s θ) ds`, by the radial rule.
    #[inline]
    fn ray_integral(&self, density: &Density, theta: &[f64], r: f64, power: i32, x: &mut [f64]) -> f64 {
        let mut acc = 0.0;
        for (&s, &w) in self.radial_nodes.iter().zip(&self.radial_weights) {
            let t = r * s;
            for (xi, th) in x.iter_mut().zip(theta) {
                *xi = t * th;
            }
            acc += w * s.powi(power) * density.eval_unchecked(x);
        }
        acc
    }

    /// Evaluates `term(node)` for every node of `rule`, then sums in order.
    fn sum_over<F>(rule: &SphereRule, n: usize, term: F) -> f64
    where
        F: Fn(&[f64], &mut [f64]) -> f64 + Sync,
    {
        let weighted = |(theta, w): (&[f64], &f64), buf: &mut Vec<f64>| w * term(theta, buf);
        let values: Vec<f64> = if rule.len() >= PARALLEL_THRESHOLD {
            rule.nodes()
                .zip(rule.weights())
                .collect::<Vec<_>>()
                .into_par_iter()
                .map_init(|| vec![0.0; n], |buf, item| weighted(item, buf))
                .collect()
        } else {
            let mut buf = vec![0.0; n];
            rule.nodes()
                .zip(rule.weights())
                .map(|item| weighted(item, &mut buf))
                .collect()
        };
        compensated_sum(values)
    }

    /// `μ(K)` by the polar formula.
    pub fn measure(&self, body: &Body, density: &Density) -> Result<f64> {
        self.check_inputs(body, Some(density))?;
        let n = self.dimension;
        let value = Self::sum_over(&self.sphere, n, |theta, buf| {
            let r = body.radial_unchecked(theta);
            r.powi(n as i32) * self.ray_integral(density, theta, r, n as i32 - 1, buf)
        });
        finite(value, "measure")
    }

    /// `Vol_n(K) = (1/n) ∫ ρ_K^n`; the radial integral is exact.
    pub fn volume(&self, body: &Body) -> Result<f64> {
        self.check_inputs(body, None)?;
        let n = self.dimension;
        let value = Self::sum_over(&self.sphere, n, |theta, _| body.radial_unchecked(theta).powi(n as i32));
        finite(value / n as f64, "volume")
    }

    /// `μ(K ∩ ξ⊥)`, integrated in polar coordinates inside the hyperplane.
    pub fn section_measure(&self, body: &Body, density: &Density, xi: &[f64]) -> Result<f64> {
        self.check_inputs(body, Some(density))?;
        Error::check_dimension(self.dimension, xi.len())?;
        if !is_unit(xi) {
            return Err(Error::invalid(format!(
                "section direction must be a unit vector, |xi| = {}",
                norm(xi)
            )));
        }
        let frame = SectionFrame::new_unchecked(&canonical_direction(xi));
        self.section_in_frame(body, density, &frame)
    }

    fn section_in_frame(&self, body: &Body, density: &Density, frame: &SectionFrame) -> Result<f64> {
        let n = self.dimension;
        let value = Self::sum_over(&self.subsphere, n, |u, buf| {
            let mut theta = [0.0; 4];
            let theta = &mut theta[..n];
            frame.embed_into(u, theta);
            let r = body.radial_unchecked(theta);
            r.powi(n as i32 - 1) * self.ray_integral(density, theta, r, n as i32 - 2, buf)
        });
        finite(value, "section measure")
    }
}

fn finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Numerical(format!("{what} evaluated to {value}")))
    }
}

/// A pair of integrators, at a spec and at its refinement, producing
/// [`Estimate`]s.
#[derive(Clone, Debug)]
pub struct Estimator {
    coarse: Integrator,
    fine: Integrator,
}

impl Estimator {
    pub fn new(dimension: usize, spec: QuadratureSpec) -> Result<Self> {
        let coarse = Integrator::new(dimension, spec)?;
        let fine = coarse.refined()?;
        Ok(Estimator { coarse, fine })
    }

    pub fn dimension(&self) -> usize {
        self.coarse.dimension
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.coarse.spec
    }

    pub fn coarse(&self) -> &Integrator {
        &self.coarse
    }

    pub fn fine(&self) -> &Integrator {
        &self.fine
    }

    pub fn measure(&self, body: &Body, density: &Density) -> Result<Estimate> {
        Estimate::from_pair(self.coarse.measure(body, density)?, self.fine.measure(body, density)?)
    }

    pub fn volume(&self, body: &Body) -> Result<Estimate> {
        Estimate::from_pair(self.coarse.volume(body)?, self.fine.volume(body)?)
    }

    pub fn section_measure(&self, body: &Body, density: &Density, xi: &[f64]) -> Result<Estimate> {
        Estimate::from_pair(
            self.coarse.section_measure(body, density, xi)?,
            self.fine.section_measure(body, density, xi)?,
        )
    }
}

/// `μ(K)` at the given resolution.
pub fn measure(body: &Body, density: &Density, spec: &QuadratureSpec) -> Result<f64> {
    Integrator::new(body.dimension(), *spec)?.measure(body, density)
}

/// `Vol_n(K)` at the given resolution.
pub fn volume(body: &Body, spec: &QuadratureSpec) -> Result<f64> {
    Integrator::new(body.dimension(), *spec)?.volume(body)
}

/// `μ(K ∩ ξ⊥)` at the given resolution.
pub fn section_measure(body: &Body, density: &Density, xi: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    Integrator::new(body.dimension(), *spec)?.section_measure(body, density, xi)
}
