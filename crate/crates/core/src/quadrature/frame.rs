use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::{is_unit, norm};

/// A unit direction `ξ` and an orthonormal basis of the hyperplane `ξ⊥`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionFrame {
    direction: Vec<f64>,
    basis: Vec<Vec<f64>>,
}

impl SectionFrame {
    /// Builds the basis from the Householder reflection that exchanges the last
    /// standard basis vector with `±ξ`; the sign is chosen so that the
    /// reflection vector never suffers cancellation. The result is a pure
    /// function of the input bits.
    pub fn new(xi: &[f64]) -> Result<Self> {
        if xi.len() < 2 {
            return Err(Error::invalid("a section frame needs dimension at least 2"));
        }
        if !is_unit(xi) {
            return Err(Error::invalid(format!(
                "section direction must be a unit vector, |xi| = {}",
                norm(xi)
            )));
        }
        Ok(Self::new_unchecked(xi))
    }

    pub(crate) fn new_unchecked(xi: &[f64]) -> Self {
        let n = xi.len();
        let last = xi[n - 1];
        let sign = if last > 0.0 { 1.0 } else { -1.0 };
        // v = e_n + sign·ξ, the reflection H = I − 2vvᵀ/|v|² sends e_n to −sign·ξ
        let mut v: Vec<f64> = xi.iter().map(|c| sign * c).collect();
        v[n - 1] += 1.0;
        let vv: f64 = v.iter().map(|c| c * c).sum();
        let basis = (0..n - 1)
            .map(|i| {
                let scale = 2.0 * v[i] / vv;
                (0..n)
                    .map(|k| {
                        let identity = if k == i { 1.0 } else { 0.0 };
                        identity - scale * v[k]
                    })
                    .collect()
            })
            .collect();
        SectionFrame {
            direction: xi.to_vec(),
            basis,
        }
    }

    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Maps hyperplane coordinates `u ∈ ℝ^{n−1}` to `Σ u_k b_k ∈ ℝⁿ`.
    #[inline]
    pub fn embed_into(&self, u: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (coef, b) in u.iter().zip(&self.basis) {
            for (o, bk) in out.iter_mut().zip(b) {
                *o += coef * bk;
            }
        }
    }
}

/// Canonical representative of `±ξ`: the last nonzero coordinate is made
/// positive, so `ξ` and `−ξ` share one frame and give bit-identical sections.
pub(crate) fn canonical_direction(xi: &[f64]) -> Vec<f64> {
    let flip = xi.iter().rev().find(|c| **c != 0.0).is_some_and(|c| *c < 0.0);
    if flip {
        xi.iter().map(|c| -c).collect()
    } else {
        xi.to_vec()
    }
}
