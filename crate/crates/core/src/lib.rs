//! Measures of origin-symmetric convex bodies and of their central hyperplane
//! sections under even, positive, continuous densities.
//!
//! The crate is organised bottom-up:
//!
//! - [`body`]: convex bodies given by exact gauge (Minkowski functional) formulas.
//! - [`density`]: even positive densities `f` defining the measure `μ`.
//! - [`specfun`]: half-integer Gamma values, ball volumes, sphere areas and the
//!   constants that appear in slicing inequalities.
//! - [`quadrature`]: polar-coordinate integration of `μ(K)`, `Vol_n(K)` and
//!   `μ(K ∩ ξ⊥)` with product rules on the sphere.
//! - [`search`]: maximisation of the section measure over directions.
//! - [`inequality`]: structured verification reports for the slicing and
//!   stability inequalities and the supporting lemmas.
//! - [`oracle`]: seeded Monte Carlo estimators used to cross-check quadrature.

pub mod body;
pub mod density;
pub mod error;
pub mod inequality;
pub mod oracle;
pub mod quadrature;
pub mod search;
pub mod specfun;
mod vector;

pub use body::{Body, Shape};
pub use density::{Density, DensityForm};
pub use error::{Error, Result};
pub use inequality::{InequalityReport, StabilityEpsilon};
pub use oracle::McEstimate;
pub use quadrature::{Estimate, Estimator, Integrator, QuadratureSpec, SectionFrame, SphereRule};
pub use search::SectionValue;

