//! Origin-symmetric convex bodies described by their gauge function
//! `‖x‖_K = min{a ≥ 0 : x ∈ aK}`.
//!
//! Four parametric families are supported. Each has a closed-form gauge, so
//! no root finding is ever needed inside quadrature loops.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{dot, is_unit, norm, rank, solve};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape {
    EuclideanBall {
        radius: f64,
    },
    Ellipsoid {
        semi_axes: Vec<f64>,
    },
    /// `{x : (Σ |x_i / scale_i|^p)^{1/p} ≤ 1}`.
    LpBall {
        p: f64,
        scales: Vec<f64>,
    },
    /// `{x : |⟨x, normal_i⟩| ≤ offset_i for all i}`; each facet pair is stored once.
    SymmetricPolytope {
        facet_normals: Vec<Vec<f64>>,
        offsets: Vec<f64>,
    },
}

/// An origin-symmetric convex body in `ℝⁿ`. Immutable once built.
#[derive(Clone, Debug, Serialize)]
pub struct Body {
    dimension: usize,
    shape: Shape,
    #[serde(skip)]
    bounding_radius: f64,
    /// Polytope normals divided by their offsets, flattened row-major.
    #[serde(skip)]
    scaled_normals: Vec<f64>,
}

impl PartialEq for Body {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension && self.shape == other.shape
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn check_dimension_at_least_two(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::invalid(format!("dimension must be at least 2, got {n}")))
    }
}

impl Body {
    pub fn new(dimension: usize, shape: Shape) -> Result<Self> {
        check_dimension_at_least_two(dimension)?;
        match &shape {
            Shape::EuclideanBall { radius } => positive("radius", *radius)?,
            Shape::Ellipsoid { semi_axes } => {
                Error::check_dimension(dimension, semi_axes.len())?;
                for &a in semi_axes {
                    positive("semi-axis", a)?;
                }
            }
            Shape::LpBall { p, scales } => {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(Error::invalid(format!("p must be finite and at least 1, got {p}")));
                }
                Error::check_dimension(dimension, scales.len())?;
                for &s in scales {
                    positive("scale", s)?;
                }
            }
            Shape::SymmetricPolytope { facet_normals, offsets } => {
                if facet_normals.len() != offsets.len() {
                    return Err(Error::invalid(format!(
                        "{} facet normals but {} offsets",
                        facet_normals.len(),
                        offsets.len()
                    )));
                }
                for normal in facet_normals {
                    Error::check_dimension(dimension, normal.len())?;
                    if !normal.iter().all(|v| v.is_finite()) || norm(normal) == 0.0 {
                        return Err(Error::invalid("facet normals must be finite and nonzero"));
                    }
                }
                for &h in offsets {
                    positive("offset", h)?;
                }
                if rank(facet_normals) < dimension {
                    return Err(Error::invalid(
                        "facet normals do not span the space; the polytope is unbounded",
                    ));
                }
            }
        }
        let scaled_normals = match &shape {
            Shape::SymmetricPolytope { facet_normals, offsets } => facet_normals
                .iter()
                .zip(offsets)
                .flat_map(|(a, h)| a.iter().map(move |v| v / h))
                .collect(),
            _ => Vec::new(),
        };
        let mut body = Body {
            dimension,
            shape,
            bounding_radius: 0.0,
            scaled_normals,
        };
        body.bounding_radius = body.compute_bounding_radius()?;
        Ok(body)
    }

    pub fn ball(dimension: usize, radius: f64) -> Result<Self> {
        Self::new(dimension, Shape::EuclideanBall { radius })
    }

    pub fn ellipsoid(semi_axes: Vec<f64>) -> Result<Self> {
        Self::new(semi_axes.len(), Shape::Ellipsoid { semi_axes })
    }

    pub fn lp_ball(p: f64, scales: Vec<f64>) -> Result<Self> {
        Self::new(scales.len(), Shape::LpBall { p, scales })
    }

    pub fn polytope(facet_normals: Vec<Vec<f64>>, offsets: Vec<f64>) -> Result<Self> {
        let dimension = facet_normals.first().map_or(0, Vec::len);
        Self::new(dimension, Shape::SymmetricPolytope { facet_normals, offsets })
    }

    /// The cube `[−h, h]ⁿ` as a symmetric polytope.
    pub fn cube(dimension: usize, half_width: f64) -> Result<Self> {
        let normals = (0..dimension)
            .map(|i| (0..dimension).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(
            dimension,
            Shape::SymmetricPolytope {
                facet_normals: normals,
                offsets: vec![half_width; dimension],
            },
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// The dilate `factor · K`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        positive("scale factor", factor)?;
        let shape = match &self.shape {
            Shape::EuclideanBall { radius } => Shape::EuclideanBall { radius: radius * factor },
            Shape::Ellipsoid { semi_axes } => Shape::Ellipsoid {
                semi_axes: semi_axes.iter().map(|a| a * factor).collect(),
            },
            Shape::LpBall { p, scales } => Shape::LpBall {
                p: *p,
                scales: scales.iter().map(|s| s * factor).collect(),
            },
            Shape::SymmetricPolytope { facet_normals, offsets } => Shape::SymmetricPolytope {
                facet_normals: facet_normals.clone(),
                offsets: offsets.iter().map(|h| h * factor).collect(),
            },
        };
        Self::new(self.dimension, shape)
    }

    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        Error::check_dimension(self.dimension, x.len())?;
        Ok(self.gauge_unchecked(x))
    }

    /// Gauge without the length check; `x` must have `dimension` entries.
    #[inline]
    pub fn gauge_unchecked(&self, x: &[f64]) -> f64 {
        match &self.shape {
            Shape::EuclideanBall { radius } => norm(x) / radius,
            Shape::Ellipsoid { semi_axes } => x
                .iter()
                .zip(semi_axes)
                .map(|(v, a)| (v / a) * (v / a))
                .sum::<f64>()
                .sqrt(),
            Shape::LpBall { p, scales } => {
                let largest = x
                    .iter()
                    .zip(scales)
                    .fold(0.0f64, |m, (v, s)| m.max(v.abs() / s));
                if largest == 0.0 {
                    return 0.0;
                }
                let sum: f64 = x
                    .iter()
                    .zip(scales)
                    .map(|(v, s)| (v.abs() / s / largest).powf(*p))
                    .sum();
                largest * sum.powf(1.0 / p)
            }
            Shape::SymmetricPolytope { .. } => self
                .scaled_normals
                .chunks_exact(self.dimension)
                .fold(0.0f64, |m, a| m.max(dot(a, x).abs())),
        }
    }

    /// Distance from the origin to the boundary along the unit vector `theta`.
    pub fn radial(&self, theta: &[f64]) -> Result<f64> {
        Error::check_dimension(self.dimension, theta.len())?;
        if !is_unit(theta) {
            return Err(Error::invalid(format!(
                "radial direction must be a unit vector, |theta| = {}",
                norm(theta)
            )));
        }
        Ok(self.radial_unchecked(theta))
    }

    #[inline]
    pub fn radial_unchecked(&self, theta: &[f64]) -> f64 {
        1.0 / self.gauge_unchecked(theta)
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        Ok(self.gauge(x)? <= 1.0)
    }

    /// The largest Euclidean norm of a point of `K`, in closed form.
    pub fn bounding_radius(&self) -> f64 {
        self.bounding_radius
    }

    fn compute_bounding_radius(&self) -> Result<f64> {
        let r = match &self.shape {
            Shape::EuclideanBall { radius } => *radius,
            Shape::Ellipsoid { semi_axes } => semi_axes.iter().cloned().fold(0.0, f64::max),
            Shape::LpBall { p, scales } => lp_bounding_radius(*p, scales),
            Shape::SymmetricPolytope { facet_normals, offsets } => {
                self.polytope_bounding_radius(facet_normals, offsets)?
            }
        };
        Ok(r)
    }

    /// Maximum vertex norm. Vertices are enumerated as solutions of every
    /// n-subset of facet equations with every sign pattern, kept when feasible.
    fn polytope_bounding_radius(&self, normals: &[Vec<f64>], offsets: &[f64]) -> Result<f64> {
        let n = self.dimension;
        let m = normals.len();
        let mut best = 0.0f64;
        let mut subset: Vec<usize> = (0..n).collect();
        loop {
            // the sign of the first equation can be fixed by symmetry
            for signs in 0..(1usize << (n - 1)) {
                let a: Vec<Vec<f64>> = subset.iter().map(|&i| normals[i].clone()).collect();
                let b: Vec<f64> = subset
                    .iter()
                    .enumerate()
                    .map(|(k, &i)| {
                        let negative = k > 0 && (signs >> (k - 1)) & 1 == 1;
                        if negative {
                            -offsets[i]
                        } else {
                            offsets[i]
                        }
                    })
                    .collect();
                if let Some(x) = solve(a, b) {
                    if self.gauge_unchecked(&x) <= 1.0 + 1e-9 {
                        best = best.max(norm(&x));
                    }
                }
            }
            // next n-combination of 0..m in lexicographic order
            let mut k = n;
            while k > 0 && subset[k - 1] == m - n + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            subset[k - 1] += 1;
            for j in k..n {
                subset[j] = subset[j - 1] + 1;
            }
        }
        if best > 0.0 && best.is_finite() {
            Ok(best)
        } else {
            Err(Error::Numerical("polytope has no vertices".into()))
        }
    }
}

/// `max |x|₂` over the ℓ_p ellipsoid. For `p ≤ 2` the maximum is attained on a
/// coordinate axis; for `p > 2` the Lagrange conditions give
/// `R = (Σ s_i^{2p/(p−2)})^{(p−2)/(2p)}`.
fn lp_bounding_radius(p: f64, scales: &[f64]) -> f64 {
    let largest = scales.iter().cloned().fold(0.0, f64::max);
    if p <= 2.0 {
        return largest;
    }
    let k = 2.0 * p / (p - 2.0);
    let sum: f64 = scales.iter().map(|s| (s / largest).powf(k)).sum();
    largest * sum.powf(1.0 / k)
}
