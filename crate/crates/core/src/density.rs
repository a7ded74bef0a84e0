//! Even, positive, continuous densities on `ℝⁿ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::dot;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DensityForm {
    Constant {
        value: f64,
    },
    /// `exp(−|x|² / (2σ²))`, unnormalised.
    IsotropicGaussian {
        sigma: f64,
    },
    /// `exp(−½ Σ d_i x_i²)`.
    AnisotropicGaussian {
        inverse_covariance_diagonal: Vec<f64>,
    },
    /// `(1 + |x|²)^{−s}`.
    RationalDecay {
        s: f64,
    },
    /// `base(x) · (1 + amplitude · cos²⟨w, x⟩)`.
    CosinePerturbed {
        base: Box<DensityForm>,
        amplitude: f64,
        frequency: Vec<f64>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Density {
    dimension: usize,
    form: DensityForm,
}

fn validate(dimension: usize, form: &DensityForm) -> Result<()> {
    let positive = |name: &str, v: f64| {
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
        }
    };
    match form {
        DensityForm::Constant { value } => positive("constant density", *value),
        DensityForm::IsotropicGaussian { sigma } => positive("sigma", *sigma),
        DensityForm::AnisotropicGaussian { inverse_covariance_diagonal } => {
            Error::check_dimension(dimension, inverse_covariance_diagonal.len())?;
            inverse_covariance_diagonal
                .iter()
                .try_for_each(|&d| positive("inverse covariance entry", d))
        }
        DensityForm::RationalDecay { s } => positive("decay exponent", *s),
        DensityForm::CosinePerturbed { base, amplitude, frequency } => {
            if !(amplitude.is_finite() && amplitude.abs() < 1.0) {
                return Err(Error::invalid(format!(
                    "cosine amplitude must satisfy |amplitude| < 1, got {amplitude}"
                )));
            }
            Error::check_dimension(dimension, frequency.len())?;
            if !frequency.iter().all(|w| w.is_finite()) {
                return Err(Error::invalid("frequency entries must be finite"));
            }
            validate(dimension, base)
        }
    }
}

impl DensityForm {
    #[inline]
    fn eval(&self, x: &[f64]) -> f64 {
        match self {
            DensityForm::Constant { value } => *value,
            DensityForm::IsotropicGaussian { sigma } => {
                (-dot(x, x) / (2.0 * sigma * sigma)).exp()
            }
            DensityForm::AnisotropicGaussian { inverse_covariance_diagonal } => {
                let q: f64 = x
                    .iter()
                    .zip(inverse_covariance_diagonal)
                    .map(|(v, d)| d * v * v)
                    .sum();
                (-0.5 * q).exp()
            }
            DensityForm::RationalDecay { s } => (1.0 + dot(x, x)).powf(-s),
            DensityForm::CosinePerturbed { base, amplitude, frequency } => {
                let c = dot(frequency, x).cos();
                base.eval(x) * (1.0 + amplitude * c * c)
            }
        }
    }

    fn is_constant(&self) -> bool {
        matches!(self, DensityForm::Constant { .. })
    }
}

impl Density {
    pub fn new(dimension: usize, form: DensityForm) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::invalid(format!("dimension must be at least 2, got {dimension}")));
        }
        validate(dimension, &form)?;
        Ok(Density { dimension, form })
    }

    /// Lebesgue measure: `f ≡ 1`.
    pub fn lebesgue(dimension: usize) -> Result<Self> {
        Self::new(dimension, DensityForm::Constant { value: 1.0 })
    }

    pub fn gaussian(dimension: usize, sigma: f64) -> Result<Self> {
        Self::new(dimension, DensityForm::IsotropicGaussian { sigma })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn form(&self) -> &DensityForm {
        &self.form
    }

    pub fn is_constant(&self) -> bool {
        self.form.is_constant()
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        Error::check_dimension(self.dimension, x.len())?;
        Ok(self.form.eval(x))
    }

    #[inline]
    pub fn eval_unchecked(&self, x: &[f64]) -> f64 {
        self.form.eval(x)
    }
}
