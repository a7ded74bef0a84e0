//! Gamma function at half-integers and the geometric constants built from it.
//!
//! Every Gamma argument needed here is of the form `k/2`, so closed forms
//! replace general-purpose approximations:
//! `Γ(m) = (m−1)!` and `Γ(m + ½) = (2m)! √π / (4^m m!)`,
//! both accumulated in log space.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// The number `twice_value / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice_value: u32,
}

impl HalfInteger {
    pub fn new(twice_value: u32) -> Result<Self> {
        if twice_value == 0 {
            return Err(Error::invalid("Gamma is evaluated at positive half-integers only"));
        }
        Ok(HalfInteger { twice_value })
    }

    pub fn twice_value(self) -> u32 {
        self.twice_value
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_value) / 2.0
    }

    /// `self + 1`.
    pub fn succ(self) -> Self {
        HalfInteger { twice_value: self.twice_value + 2 }
    }
}

fn ln_factorial(m: u32) -> f64 {
    (2..=m).map(|k| f64::from(k).ln()).sum()
}

pub fn ln_gamma_half(h: HalfInteger) -> f64 {
    let k = h.twice_value;
    if k.is_multiple_of(2) {
        ln_factorial(k / 2 - 1)
    } else {
        let m = (k - 1) / 2;
        ln_factorial(2 * m) - f64::from(m) * 4f64.ln() - ln_factorial(m) + 0.5 * PI.ln()
    }
}

pub fn gamma_half(h: HalfInteger) -> f64 {
    ln_gamma_half(h).exp()
}

fn half(twice_value: usize) -> HalfInteger {
    HalfInteger { twice_value: twice_value as u32 }
}

fn require(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::invalid(format!("dimension must be at least {min}, got {n}")))
    } else {
        Ok(())
    }
}

fn ln_ball_volume(n: usize) -> f64 {
    0.5 * n as f64 * PI.ln() - ln_gamma_half(half(n + 2))
}

/// `|B_2^n| = π^{n/2} / Γ(1 + n/2)`.
pub fn ball_volume(n: usize) -> Result<f64> {
    require(n, 1)?;
    Ok(ln_ball_volume(n).exp())
}

/// `|S^{n−1}| = 2π^{n/2} / Γ(n/2)`.
pub fn sphere_area(n: usize) -> Result<f64> {
    require(n, 1)?;
    Ok(2.0 * (0.5 * n as f64 * PI.ln() - ln_gamma_half(half(n))).exp())
}

/// `|B_2^n|^{(n−1)/n} / |B_2^{n−1}|`, the best constant in the volume slicing
/// inequality for `n ≤ 4`, attained by the Euclidean ball.
pub fn sharp_volume_constant(n: usize) -> Result<f64> {
    require(n, 2)?;
    let nf = n as f64;
    Ok(((nf - 1.0) / nf * ln_ball_volume(n) - ln_ball_volume(n - 1)).exp())
}

/// Both sides of `Γ((n−1)/2) / Γ(n/2)^{(n−1)/n} ≤ n^{(n−1)/n} 2^{1/n} / (n−1)`.
pub fn gamma_lemma_sides(n: usize) -> Result<(f64, f64)> {
    require(n, 2)?;
    let nf = n as f64;
    let exponent = (nf - 1.0) / nf;
    let lhs = (ln_gamma_half(half(n - 1)) - exponent * ln_gamma_half(half(n))).exp();
    let rhs = (exponent * nf.ln() + 2f64.ln() / nf - (nf - 1.0).ln()).exp();
    Ok((lhs, rhs))
}

/// Both sides of the log-convexity step `Γ((n+1)/2) ≤ Γ(n/2 + 1)^{(n−1)/n}`.
pub fn log_convexity_sides(n: usize) -> Result<(f64, f64)> {
    require(n, 2)?;
    let nf = n as f64;
    let lhs = gamma_half(half(n + 1));
    let rhs = ((nf - 1.0) / nf * ln_gamma_half(half(n + 2))).exp();
    Ok((lhs, rhs))
}
