//! Run configuration: a JSON document describing bodies, densities and
//! numerical settings. See `CONFIG.md` for the schema.

use std::path::Path;

use hyperslice::{Body, Density, DensityForm, QuadratureSpec, Shape};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_SEARCH_RESOLUTION: usize = 64;
pub const DEFAULT_MC_SAMPLES: u64 = 100_000;
pub const DEFAULT_LEMMA_INSTANCES: usize = 1000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodyDescriptor {
    Ball {
        radius: f64,
    },
    Cube {
        half_width: f64,
    },
    Ellipsoid {
        semi_axes: Vec<f64>,
    },
    LpBall {
        p: f64,
        /// Defaults to all ones in the configured dimension.
        #[serde(default)]
        scales: Option<Vec<f64>>,
    },
    Polytope {
        facet_normals: Vec<Vec<f64>>,
        offsets: Vec<f64>,
    },
}

impl BodyDescriptor {
    /// Builds the body in dimension `n`; explicit coordinate lists must have length `n`.
    pub fn build(&self, n: usize) -> Result<Body, CliError> {
        let check = |len: usize, what: &str| {
            if len == n {
                Ok(())
            } else {
                Err(CliError::Config(format!(
                    "{what} has {len} entries but the dimension is {n}"
                )))
            }
        };
        let shape = match self {
            BodyDescriptor::Ball { radius } => Shape::EuclideanBall { radius: *radius },
            BodyDescriptor::Cube { half_width } => return Ok(Body::cube(n, *half_width)?),
            BodyDescriptor::Ellipsoid { semi_axes } => {
                check(semi_axes.len(), "ellipsoid semi_axes")?;
                Shape::Ellipsoid {
                    semi_axes: semi_axes.clone(),
                }
            }
            BodyDescriptor::LpBall { p, scales } => {
                let scales = scales.clone().unwrap_or_else(|| vec![1.0; n]);
                check(scales.len(), "lp_ball scales")?;
                Shape::LpBall { p: *p, scales }
            }
            BodyDescriptor::Polytope {
                facet_normals,
                offsets,
            } => {
                for a in facet_normals {
                    check(a.len(), "polytope facet normal")?;
                }
                Shape::SymmetricPolytope {
                    facet_normals: facet_normals.clone(),
                    offsets: offsets.clone(),
                }
            }
        };
        Ok(Body::new(n, shape)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensityDescriptor {
    Constant {
        value: f64,
    },
    Gaussian {
        sigma: f64,
    },
    AnisotropicGaussian {
        inverse_covariance_diagonal: Vec<f64>,
    },
    RationalDecay {
        s: f64,
    },
    CosinePerturbed {
        base: Box<DensityDescriptor>,
        amplitude: f64,
        frequency: Vec<f64>,
    },
}

impl DensityDescriptor {
    fn form(&self) -> DensityForm {
        match self {
            DensityDescriptor::Constant { value } => DensityForm::Constant { value: *value },
            DensityDescriptor::Gaussian { sigma } => DensityForm::IsotropicGaussian { sigma: *sigma },
            DensityDescriptor::AnisotropicGaussian {
                inverse_covariance_diagonal,
            } => DensityForm::AnisotropicGaussian {
                inverse_covariance_diagonal: inverse_covariance_diagonal.clone(),
            },
            DensityDescriptor::RationalDecay { s } => DensityForm::RationalDecay { s: *s },
            DensityDescriptor::CosinePerturbed {
                base,
                amplitude,
                frequency,
            } => DensityForm::CosinePerturbed {
                base: Box::new(base.form()),
                amplitude: *amplitude,
                frequency: frequency.clone(),
            },
        }
    }

    pub fn build(&self, n: usize) -> Result<Density, CliError> {
        Ok(Density::new(n, self.form())?)
    }
}

/// An ordered pair `(K, L)`: either indices into `bodies` or inline descriptors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairDescriptor {
    Indices([usize; 2]),
    Inline { k: BodyDescriptor, l: BodyDescriptor },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepCommand {
    Hyperplane,
    VolumeRatio,
    Stability,
    Difference,
    VolumeStability,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dimension: usize,
    #[serde(default)]
    pub bodies: Option<Vec<BodyDescriptor>>,
    #[serde(default)]
    pub densities: Option<Vec<DensityDescriptor>>,
    /// Defaults to every ordered pair of distinct bodies.
    #[serde(default)]
    pub pairs: Option<Vec<PairDescriptor>>,
    /// Defaults to the per-dimension default resolution.
    #[serde(default)]
    pub spec: Option<QuadratureSpec>,
    #[serde(default = "default_search_resolution")]
    pub search_resolution: usize,
    #[serde(default = "default_mc_samples")]
    pub mc_samples: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_path: Option<String>,
    #[serde(default)]
    pub format: Format,
    /// Section directions; need not be normalised. Defaults to the last basis vector.
    #[serde(default)]
    pub directions: Option<Vec<Vec<f64>>>,
    /// Inequalities evaluated by `sweep`; defaults to `["hyperplane"]`.
    #[serde(default)]
    pub commands: Option<Vec<SweepCommand>>,
    /// Dimensions visited by `sweep`; defaults to `[dimension]`.
    #[serde(default)]
    pub dimensions: Option<Vec<usize>>,
    #[serde(default = "default_lemma_instances")]
    pub lemma_instances: usize,
}

fn default_search_resolution() -> usize {
    DEFAULT_SEARCH_RESOLUTION
}

fn default_mc_samples() -> u64 {
    DEFAULT_MC_SAMPLES
}

fn default_lemma_instances() -> usize {
    DEFAULT_LEMMA_INSTANCES
}

fn check_dimension(n: usize) -> Result<(), CliError> {
    if (2..=4).contains(&n) {
        Ok(())
    } else {
        Err(CliError::Config(format!("dimension must be 2, 3 or 4, got {n}")))
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))?;
        check_dimension(config.dimension)?;
        if let Some(dims) = &config.dimensions {
            if dims.is_empty() {
                return Err(CliError::Config("dimensions must not be empty".into()));
            }
            dims.iter().try_for_each(|&n| check_dimension(n))?;
        }
        if let Some(spec) = &config.spec {
            spec.validate()?;
        }
        Ok(config)
    }

    pub fn spec_for(&self, n: usize) -> QuadratureSpec {
        self.spec.unwrap_or_else(|| QuadratureSpec::for_dimension(n))
    }

    pub fn body_descriptors(&self) -> Result<&[BodyDescriptor], CliError> {
        match &self.bodies {
            Some(b) if !b.is_empty() => Ok(b),
            Some(_) => Err(CliError::Config("bodies must not be empty".into())),
            None => Err(CliError::Config("missing field `bodies`".into())),
        }
    }

    pub fn bodies(&self, n: usize) -> Result<Vec<Body>, CliError> {
        self.body_descriptors()?.iter().map(|b| b.build(n)).collect()
    }

    pub fn densities(&self, n: usize) -> Result<Vec<Density>, CliError> {
        match &self.densities {
            Some(d) if !d.is_empty() => d.iter().map(|d| d.build(n)).collect(),
            Some(_) => Err(CliError::Config("densities must not be empty".into())),
            None => Err(CliError::Config("missing field `densities`".into())),
        }
    }

    /// Resolved pairs with display labels.
    pub fn pairs(&self, n: usize) -> Result<Vec<(String, Body, Body)>, CliError> {
        match &self.pairs {
            None => {
                let bodies = self.bodies(n)?;
                if bodies.len() < 2 {
                    return Err(CliError::Config(
                        "pair commands need two bodies or an explicit `pairs` list".into(),
                    ));
                }
                let mut out = Vec::new();
                for (i, k) in bodies.iter().enumerate() {
                    for (j, l) in bodies.iter().enumerate() {
                        if i != j {
                            out.push((format!("b{i}-b{j}"), k.clone(), l.clone()));
                        }
                    }
                }
                Ok(out)
            }
            Some(pairs) if pairs.is_empty() => Err(CliError::Config("pairs must not be empty".into())),
            Some(pairs) => pairs
                .iter()
                .enumerate()
                .map(|(index, pair)| match pair {
                    PairDescriptor::Indices([i, j]) => {
                        let descriptors = self.body_descriptors()?;
                        let get = |i: usize| {
                            descriptors.get(i).ok_or_else(|| {
                                CliError::Config(format!("pair {index} refers to missing body {i}"))
                            })
                        };
                        Ok((format!("b{i}-b{j}"), get(*i)?.build(n)?, get(*j)?.build(n)?))
                    }
                    PairDescriptor::Inline { k, l } => Ok((format!("p{index}"), k.build(n)?, l.build(n)?)),
                })
                .collect(),
        }
    }

    /// Unit section directions for dimension `n`.
    pub fn directions(&self, n: usize) -> Result<Vec<Vec<f64>>, CliError> {
        let Some(directions) = &self.directions else {
            let mut e = vec![0.0; n];
            e[n - 1] = 1.0;
            return Ok(vec![e]);
        };
        if directions.is_empty() {
            return Err(CliError::Config("directions must not be empty".into()));
        }
        directions
            .iter()
            .map(|d| {
                if d.len() != n {
                    return Err(CliError::Config(format!(
                        "direction {d:?} has {} entries but the dimension is {n}",
                        d.len()
                    )));
                }
                let r = d.iter().map(|x| x * x).sum::<f64>().sqrt();
                if !(r.is_finite() && r > 0.0) {
                    return Err(CliError::Config(format!("direction {d:?} cannot be normalised")));
                }
                Ok(d.iter().map(|x| x / r).collect())
            })
            .collect()
    }

    pub fn sweep_dimensions(&self) -> Vec<usize> {
        self.dimensions.clone().unwrap_or_else(|| vec![self.dimension])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = RunConfig::parse(r#"{"dimension": 3, "bodies": [{"type": "ball", "radius": 1}]}"#).unwrap();
        assert_eq!(c.search_resolution, DEFAULT_SEARCH_RESOLUTION);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.spec_for(3), QuadratureSpec::for_dimension(3));
        assert_eq!(c.directions(3).unwrap(), vec![vec![0.0, 0.0, 1.0]]);
        assert!(c.densities(3).is_err());
    }

    #[test]
    fn descriptors_build_bodies_and_densities() {
        let c = RunConfig::parse(
            r#"{
                "dimension": 2,
                "bodies": [
                    {"type": "lp_ball", "p": 1.0, "scales": [1, 2]},
                    {"type": "lp_ball", "p": 3.0},
                    {"type": "polytope", "facet_normals": [[1, 0], [0, 1], [1, 1]], "offsets": [1, 1, 1.5]}
                ],
                "densities": [
                    {"type": "cosine_perturbed", "base": {"type": "gaussian", "sigma": 1}, "amplitude": 0.5, "frequency": [1, 2]}
                ]
            }"#,
        )
        .unwrap();
        assert_eq!(c.bodies(2).unwrap().len(), 3);
        assert_eq!(c.densities(2).unwrap().len(), 1);
        assert_eq!(c.pairs(2).unwrap().len(), 6);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(RunConfig::parse(r#"{"dimension": 5}"#).is_err());
        assert!(RunConfig::parse(r#"{"dimension": 2, "colour": 1}"#).is_err());
        assert!(RunConfig::parse(r#"{"dimension": 2, "bodies": [{"type": "torus"}]}"#).is_err());
        let c = RunConfig::parse(r#"{"dimension": 2, "bodies": [{"type": "ellipsoid", "semi_axes": [1, 2, 3]}]}"#)
            .unwrap();
        assert!(matches!(c.bodies(2), Err(CliError::Config(_))));
        let c = RunConfig::parse(r#"{"dimension": 2, "bodies": []}"#).unwrap();
        assert!(c.bodies(2).is_err());
    }

    #[test]
    fn index_pairs_are_checked() {
        let c = RunConfig::parse(
            r#"{"dimension": 2, "bodies": [{"type": "ball", "radius": 1}], "pairs": [[0, 0], [0, 3]]}"#,
        )
        .unwrap();
        assert!(c.pairs(2).is_err());
    }
}
