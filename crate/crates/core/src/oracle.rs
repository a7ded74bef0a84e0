//! Seeded Monte Carlo estimators, independent of the quadrature code path.
//!
//! Points are drawn uniformly from the bounding box `[−R, R]^d` and rejected
//! outside the body. The generator is ChaCha8 (`rand_chacha`), which is
//! specified bit-for-bit and stable across platforms. Samples are split into
//! fixed-size blocks; block `k` uses stream `k` of the seeded generator, and
//! block sums are combined in block order, so the estimate does not depend
//! on how blocks are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::body::Body;
use crate::density::Density;
use crate::error::{Error, Result};
use crate::quadrature::{canonical_direction, SectionFrame};
use crate::vector::{is_unit, norm};

pub const MIN_SAMPLES: u64 = 10_000;
const BLOCK: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// `|value − mean| ≤ sigmas·std_error + slack`, up to rounding.
    ///
    /// The rounding allowance matters when every sample is accepted and the
    /// integrand is constant, so that `std_error` is exactly zero.
    pub fn agrees_with(&self, value: f64, sigmas: f64, slack: f64) -> bool {
        let rounding = 1e-12 * value.abs().max(self.mean.abs());
        (value - self.mean).abs() <= sigmas * self.std_error + slack + rounding
    }
}

/// Sum and sum of squares of one block of samples.
struct Moments {
    sum: f64,
    sum_sq: f64,
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < MIN_SAMPLES {
        Err(Error::invalid(format!(
            "Monte Carlo needs at least {MIN_SAMPLES} samples, got {samples}"
        )))
    } else {
        Ok(())
    }
}

/// Draws `samples` points uniformly in `[−radius, radius]^dim` and averages
/// `integrand`, scaled by the box volume.
fn box_estimate<F>(dim: usize, radius: f64, samples: u64, seed: u64, integrand: F) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    let moments: Vec<Moments> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(block);
            let count = BLOCK.min(samples - block * BLOCK);
            let mut u = vec![0.0; dim];
            let mut m = Moments { sum: 0.0, sum_sq: 0.0 };
            for _ in 0..count {
                for v in u.iter_mut() {
                    *v = radius * (2.0 * rng.gen::<f64>() - 1.0);
                }
                let g = integrand(&u);
                m.sum += g;
                m.sum_sq += g * g;
            }
            m
        })
        .collect();
    let (sum, sum_sq) = moments
        .iter()
        .fold((0.0, 0.0), |(s, q), m| (s + m.sum, q + m.sum_sq));
    let count = samples as f64;
    let mean = sum / count;
    let variance = ((sum_sq - count * mean * mean) / (count - 1.0)).max(0.0);
    let box_volume = (2.0 * radius).powi(dim as i32);
    let estimate = McEstimate {
        mean: box_volume * mean,
        std_error: box_volume * (variance / count).sqrt(),
        samples,
        seed,
    };
    if estimate.mean.is_finite() && estimate.std_error.is_finite() {
        Ok(estimate)
    } else {
        Err(Error::Numerical("Monte Carlo estimate is not finite".into()))
    }
}

/// Rejection-sampling estimate of `μ(K)`.
pub fn mc_measure(body: &Body, density: &Density, samples: u64, seed: u64) -> Result<McEstimate> {
    Error::check_dimension(body.dimension(), density.dimension())?;
    check_samples(samples)?;
    box_estimate(body.dimension(), body.bounding_radius(), samples, seed, |x| {
        if body.gauge_unchecked(x) <= 1.0 {
            density.eval_unchecked(x)
        } else {
            0.0
        }
    })
}

/// Rejection-sampling estimate of `μ(K ∩ ξ⊥)` in hyperplane coordinates.
pub fn mc_section(body: &Body, density: &Density, xi: &[f64], samples: u64, seed: u64) -> Result<McEstimate> {
    let n = body.dimension();
    Error::check_dimension(n, density.dimension())?;
    Error::check_dimension(n, xi.len())?;
    check_samples(samples)?;
    if !is_unit(xi) {
        return Err(Error::invalid(format!(
            "section direction must be a unit vector, |xi| = {}",
            norm(xi)
        )));
    }
    let frame = SectionFrame::new_unchecked(&canonical_direction(xi));
    box_estimate(n - 1, body.bounding_radius(), samples, seed, |u| {
        let mut x = [0.0; 8];
        let x = &mut x[..n];
        frame.embed_into(u, x);
        if body.gauge_unchecked(x) <= 1.0 {
            density.eval_unchecked(x)
        } else {
            0.0
        }
    })
}
