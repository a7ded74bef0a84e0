//! Maximisation of `ξ ↦ μ(K ∩ ξ⊥)` over the unit sphere.
//!
//! The objective is even in `ξ`, so only a half-sphere is searched. A
//! deterministic grid pass is followed by compass search in the tangent
//! space of the best grid node. The objective is not smooth for polytopes,
//! which rules out gradient methods. The returned value is a lower bound on
//! the true maximum.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::body::Body;
use crate::density::Density;
use crate::error::{Error, Result};
use crate::quadrature::{canonical_direction, Integrator, QuadratureSpec, SectionFrame};
use crate::vector::norm;

pub const MIN_SEARCH_RESOLUTION: usize = 8;
const INITIAL_STEP: f64 = 0.2;
const FINAL_STEP: f64 = 1e-4;
const GRID_TIE: f64 = 1e-12;
const MAX_REFINEMENT_EVALUATIONS: usize = 5_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionValue {
    pub direction: Vec<f64>,
    pub value: f64,
}

/// Deterministic, roughly uniform set of `count` unit vectors covering one
/// representative of each antipodal pair.
///
/// - `n = 2`: angles `πk/count`.
/// - `n = 3`: Fibonacci lattice on the upper hemisphere.
/// - `n = 4`: Kronecker (R₃) sequence pushed through Hopf coordinates,
///   restricted to `x₄ ≥ 0`.
pub fn half_sphere_grid(n: usize, count: usize) -> Result<Vec<Vec<f64>>> {
    if count < MIN_SEARCH_RESOLUTION {
        return Err(Error::invalid(format!(
            "search resolution must be at least {MIN_SEARCH_RESOLUTION}, got {count}"
        )));
    }
    let grid = match n {
        2 => (0..count)
            .map(|k| {
                let a = PI * k as f64 / count as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        3 => {
            let golden_angle = PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = (k as f64 + 0.5) / count as f64;
                    let rho = (1.0 - z * z).sqrt();
                    let phi = golden_angle * k as f64;
                    vec![rho * phi.cos(), rho * phi.sin(), z]
                })
                .collect()
        }
        4 => {
            // plastic-number analogue for three dimensions: g⁴ = g + 1
            let g = 1.220_744_084_605_759_5_f64;
            let alpha = [1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)];
            (0..count)
                .map(|k| {
                    let u: Vec<f64> = alpha.iter().map(|a| (0.5 + a * k as f64).fract()).collect();
                    let (inner, outer) = ((1.0 - u[0]).sqrt(), u[0].sqrt());
                    let (s1, c1) = (2.0 * PI * u[1]).sin_cos();
                    let (s2, c2) = (PI * u[2]).sin_cos();
                    vec![inner * c1, inner * s1, outer * c2, outer * s2]
                })
                .collect()
        }
        _ => {
            return Err(Error::invalid(format!(
                "direction grids exist for n in 2..=4, got n = {n}"
            )))
        }
    };
    Ok(grid)
}

/// Rotates `xi` by `angle` towards the unit tangent `t`.
fn geodesic_step(xi: &[f64], t: &[f64], angle: f64) -> Vec<f64> {
    let (s, c) = angle.sin_cos();
    let mut next: Vec<f64> = xi.iter().zip(t).map(|(x, d)| c * x + s * d).collect();
    let len = norm(&next);
    next.iter_mut().for_each(|v| *v /= len);
    next
}

/// Grid pass plus tangent-space compass search, on a prepared integrator.
pub fn max_section_with(
    integrator: &Integrator,
    body: &Body,
    density: &Density,
    search_resolution: usize,
) -> Result<SectionValue> {
    let n = integrator.dimension();
    Error::check_dimension(n, body.dimension())?;
    Error::check_dimension(n, density.dimension())?;
    let grid = half_sphere_grid(n, search_resolution)?;
    let values: Vec<f64> = grid
        .par_iter()
        .map(|xi| integrator.section_measure(body, density, xi))
        .collect::<Result<_>>()?;
    let top = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let index = values
        .iter()
        .position(|v| *v >= top - GRID_TIE)
        .expect("grid is non-empty");
    let mut best = SectionValue {
        direction: grid[index].clone(),
        value: values[index],
    };

    let mut step = INITIAL_STEP;
    let mut evaluations = 0;
    while step >= FINAL_STEP && evaluations < MAX_REFINEMENT_EVALUATIONS {
        let frame = SectionFrame::new_unchecked(&canonical_direction(&best.direction));
        let mut improved = false;
        'moves: for t in frame.basis() {
            for sign in [1.0, -1.0] {
                let candidate = geodesic_step(&best.direction, t, sign * step);
                let value = integrator.section_measure(body, density, &candidate)?;
                evaluations += 1;
                if value > best.value + 1e-14 * best.value.abs() {
                    best = SectionValue {
                        direction: candidate,
                        value,
                    };
                    improved = true;
                    break 'moves;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    Ok(best)
}

/// `max_ξ μ(K ∩ ξ⊥)`, as found by grid search plus refinement.
pub fn max_section(
    body: &Body,
    density: &Density,
    spec: &QuadratureSpec,
    search_resolution: usize,
) -> Result<SectionValue> {
    let integrator = Integrator::new(body.dimension(), *spec)?;
    max_section_with(&integrator, body, density, search_resolution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::is_unit;

    #[test]
    fn grids_are_unit_and_cover_half_spheres() {
        for n in 2..=4 {
            let grid = half_sphere_grid(n, 200).unwrap();
            assert_eq!(grid.len(), 200);
            assert!(grid.iter().all(|x| is_unit(x)));
            // no two points are antipodal
            for (i, a) in grid.iter().enumerate() {
                for b in &grid[i + 1..] {
                    let s: f64 = a.iter().zip(b).map(|(x, y)| (x + y).abs()).sum();
                    assert!(s > 1e-9);
                }
            }
        }
        assert!(half_sphere_grid(3, 7).is_err());
        assert!(half_sphere_grid(5, 64).is_err());
    }

    #[test]
    fn square_maximum_is_the_diagonal() {
        let square = Body::cube(2, 1.0).unwrap();
        let f = Density::lebesgue(2).unwrap();
        let spec = QuadratureSpec::for_dimension(2);
        let best = max_section(&square, &f, &spec, 64).unwrap();
        assert!((best.value - 2.0 * 2f64.sqrt()).abs() < 1e-6, "{best:?}");
        assert!((best.direction[0].abs() - best.direction[1].abs()).abs() < 1e-6);
    }

    #[test]
    fn ellipse_maximum_contains_the_long_axis() {
        let ellipse = Body::ellipsoid(vec![2.0, 1.0]).unwrap();
        let f = Density::lebesgue(2).unwrap();
        let best = max_section(&ellipse, &f, &QuadratureSpec::for_dimension(2), 32).unwrap();
        assert!((best.value - 4.0).abs() < 1e-9);
        assert!(best.direction[0].abs() < 1e-6);
    }

    #[test]
    fn rotation_invariant_objective_is_flat() {
        let ball = Body::ball(3, 1.0).unwrap();
        let f = Density::gaussian(3, 1.0).unwrap();
        let spec = QuadratureSpec::for_dimension(3);
        let best = max_section(&ball, &f, &spec, 32).unwrap();
        let at_pole = Integrator::new(3, spec)
            .unwrap()
            .section_measure(&ball, &f, &[0.0, 0.0, 1.0])
            .unwrap();
        assert!((best.value - at_pole).abs() <= 1e-8 * at_pole);
    }

    #[test]
    fn result_dominates_every_grid_node() {
        let body = Body::lp_ball(1.0, vec![1.0, 0.7, 1.3]).unwrap();
        let f = Density::gaussian(3, 0.9).unwrap();
        let integrator = Integrator::new(3, QuadratureSpec::for_dimension(3)).unwrap();
        let best = max_section_with(&integrator, &body, &f, 40).unwrap();
        for xi in half_sphere_grid(3, 40).unwrap() {
            let v = integrator.section_measure(&body, &f, &xi).unwrap();
            assert!(best.value >= v);
            let neg: Vec<f64> = xi.iter().map(|c| -c).collect();
            let w = integrator.section_measure(&body, &f, &neg).unwrap();
            assert!((v - w).abs() <= 1e-12 * v);
        }
        assert!(is_unit(&best.direction));
    }

    #[test]
    fn low_search_resolution_is_rejected() {
        let ball = Body::ball(2, 1.0).unwrap();
        let f = Density::lebesgue(2).unwrap();
        assert!(max_section(&ball, &f, &QuadratureSpec::for_dimension(2), 4).is_err());
    }
}
