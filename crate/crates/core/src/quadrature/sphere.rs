use std::f64::consts::PI;

use serde::Serialize;

use super::legendre::gauss_legendre;
use crate::error::{Error, Result};

/// Fewest Gauss–Legendre points in the `sin²ψ`-weighted angle of `S³`; below
/// this the weight sum drifts from `2π²` by more than 1e−9.
const MIN_S3_POLAR_NODES: usize = 10;

/// A positive-weight quadrature rule on `S^{n−1}` whose nodes come in
/// antipodal pairs.
#[derive(Clone, Debug, Serialize)]
pub struct SphereRule {
    dimension: usize,
    /// Flattened node coordinates, `dimension` entries per node.
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl SphereRule {
    /// Product rule on `S^{n−1}` with about `resolution` nodes along a great
    /// circle (rounded up to an even count so that nodes pair antipodally).
    ///
    /// - `n = 1`: the two points `±1`, unit weights.
    /// - `n = 2`: equally spaced angles.
    /// - `n = 3`: Gauss–Legendre in `z = cos(polar)` × uniform azimuth.
    /// - `n = 4`: Gauss–Legendre in `ψ ∈ [0, π]` with `sin²ψ` folded into the
    ///   weights, Gauss–Legendre in `cos θ`, uniform final angle.
    pub fn new(dimension: usize, resolution: usize) -> Result<Self> {
        if !(1..=4).contains(&dimension) {
            return Err(Error::invalid(format!(
                "sphere rules exist for n in 1..=4, got n = {dimension}"
            )));
        }
        if resolution < 2 {
            return Err(Error::invalid("sphere resolution must be at least 2"));
        }
        let m = resolution + resolution % 2;
        let mut rule = SphereRule {
            dimension,
            nodes: Vec::new(),
            weights: Vec::new(),
        };
        let azimuth: Vec<f64> = (0..m).map(|k| 2.0 * PI * k as f64 / m as f64).collect();
        let azimuth_weight = 2.0 * PI / m as f64;
        match dimension {
            1 => {
                rule.push(&[1.0], 1.0);
                rule.push(&[-1.0], 1.0);
            }
            2 => {
                for &phi in &azimuth {
                    rule.push(&[phi.cos(), phi.sin()], azimuth_weight);
                }
            }
            3 => {
                let (z, wz) = gauss_legendre(m / 2);
                for (&zi, &wi) in z.iter().zip(&wz) {
                    let rho = (1.0 - zi * zi).sqrt();
                    for &phi in &azimuth {
                        rule.push(&[rho * phi.cos(), rho * phi.sin(), zi], wi * azimuth_weight);
                    }
                }
            }
            _ => {
                let (x, wx) = gauss_legendre((m / 2).max(MIN_S3_POLAR_NODES));
                let (u, wu) = gauss_legendre(m / 2);
                for (&xi, &wxi) in x.iter().zip(&wx) {
                    let psi = 0.5 * PI * (xi + 1.0);
                    let (sin_psi, cos_psi) = psi.sin_cos();
                    let w_psi = 0.5 * PI * wxi * sin_psi * sin_psi;
                    for (&ui, &wui) in u.iter().zip(&wu) {
                        let sin_theta = (1.0 - ui * ui).sqrt();
                        for &phi in &azimuth {
                            let (sin_phi, cos_phi) = phi.sin_cos();
                            rule.push(
                                &[
                                    cos_psi,
                                    sin_psi * ui,
                                    sin_psi * sin_theta * cos_phi,
                                    sin_psi * sin_theta * sin_phi,
                                ],
                                w_psi * wui * azimuth_weight,
                            );
                        }
                    }
                }
            }
        }
        Ok(rule)
    }

    fn push(&mut self, node: &[f64], weight: f64) {
        self.nodes.extend_from_slice(node);
        self.weights.push(weight);
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[f64]> {
        self.nodes.chunks_exact(self.dimension)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::sphere_area;
    use crate::vector::norm;

    #[test]
    fn circle_rule_with_four_nodes() {
        let rule = SphereRule::new(2, 4).unwrap();
        assert_eq!(rule.len(), 4);
        let expected = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (node, e) in rule.nodes().zip(expected) {
            assert!((node[0] - e[0]).abs() < 1e-15 && (node[1] - e[1]).abs() < 1e-15);
        }
        assert!(rule.weights().iter().all(|w| (w - PI / 2.0).abs() < 1e-15));
    }

    #[test]
    fn zero_sphere_is_two_points() {
        let rule = SphereRule::new(1, 16).unwrap();
        assert_eq!(rule.nodes().collect::<Vec<_>>(), vec![&[1.0][..], &[-1.0][..]]);
        assert_eq!(rule.weights(), &[1.0, 1.0]);
    }

    #[test]
    fn unsupported_dimension_is_rejected() {
        assert!(SphereRule::new(5, 16).is_err());
        assert!(SphereRule::new(0, 16).is_err());
    }

    #[test]
    fn weights_sum_to_sphere_area_and_nodes_are_unit() {
        for n in 1..=4 {
            for resolution in [8, 9, 16, 30] {
                let rule = SphereRule::new(n, resolution).unwrap();
                let total: f64 = rule.weights().iter().sum();
                let area = sphere_area(n).unwrap();
                assert!((total - area).abs() <= 1e-9 * area, "n = {n}, res = {resolution}");
                assert!(rule.weights().iter().all(|w| *w > 0.0));
                assert!(rule.nodes().all(|x| (norm(x) - 1.0).abs() < 1e-14));
            }
        }
    }

    #[test]
    fn nodes_pair_antipodally() {
        for n in 1..=4 {
            let rule = SphereRule::new(n, 11).unwrap();
            for (i, x) in rule.nodes().enumerate() {
                let partner = rule.nodes().position(|y| {
                    x.iter().zip(y).all(|(a, b)| (a + b).abs() < 1e-14)
                });
                let j = partner.unwrap_or_else(|| panic!("node {i} of S^{} has no antipode", n - 1));
                assert!((rule.weights()[i] - rule.weights()[j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn integrates_low_degree_monomials() {
        // ∫_{S²} z² = 4π/3, ∫_{S³} x₁² x₂² = 2π²/24
        let s2 = SphereRule::new(3, 16).unwrap();
        let z2: f64 = s2.nodes().zip(s2.weights()).map(|(x, w)| w * x[2] * x[2]).sum();
        assert!((z2 - 4.0 * PI / 3.0).abs() < 1e-12);
        let s3 = SphereRule::new(4, 32).unwrap();
        let m: f64 = s3
            .nodes()
            .zip(s3.weights())
            .map(|(x, w)| w * x[0] * x[0] * x[1] * x[1])
            .sum();
        assert!((m - 2.0 * PI * PI / 24.0).abs() < 1e-10);
    }
}
