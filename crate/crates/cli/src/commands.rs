//! One function per subcommand. Each returns rendered output plus whether
//! every verified inequality passed.

use hyperslice::inequality::{
    gamma_lemma_reports, hyperplane_report, lemma_ell_report, volume_ratio_report, volume_stability_report,
    PairComparison, SquaredCoefficientPolynomial,
};
use hyperslice::oracle::{mc_measure, mc_section};
use hyperslice::search::max_section_with;
use hyperslice::{Estimator, InequalityReport, Integrator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Format, RunConfig, SweepCommand};
use crate::error::CliError;
use crate::report::{render, MaxSectionRow, MeasureRow, OracleColumns, Row, SectionRow};

/// Oracle agreement: within this many standard errors plus the quadrature tolerance.
const ORACLE_SIGMAS: f64 = 4.0;
const LEMMA_ELL_TOLERANCE: f64 = 1e-10;
const LEMMA_GAMMA_MAX_N: usize = 50;

pub struct Output {
    pub bytes: Vec<u8>,
    pub all_passed: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub format: Format,
    pub mc: bool,
}

fn output<T: Row>(command: &str, rows: &[T], options: Options) -> Result<Output, CliError> {
    Ok(Output {
        bytes: render(command, rows, options.format)?,
        all_passed: true,
    })
}

fn verified(command: &str, rows: &[InequalityReport], options: Options) -> Result<Output, CliError> {
    Ok(Output {
        bytes: render(command, rows, options.format)?,
        all_passed: rows.iter().all(|r| r.passed),
    })
}

fn renamed(mut report: InequalityReport, label: &str) -> InequalityReport {
    report.name = format!("{}:{label}", report.name);
    report
}

/// Distinct oracle seed per output row.
fn row_seed(seed: u64, row: usize) -> u64 {
    seed.wrapping_add(row as u64)
}

pub fn measure(config: &RunConfig, options: Options) -> Result<Output, CliError> {
    let n = config.dimension;
    let bodies = config.bodies(n)?;
    let densities = config.densities(n)?;
    let est = Estimator::new(n, config.spec_for(n))?;
    let mut rows = Vec::new();
    for (i, body) in bodies.iter().enumerate() {
        let vol = est.volume(body)?;
        for (j, density) in densities.iter().enumerate() {
            let mu = est.measure(body, density)?;
            let oracle = if options.mc {
                let mc = mc_measure(body, density, config.mc_samples, row_seed(config.seed, rows.len()))?;
                Some(OracleColumns {
                    mc_mean: mc.mean,
                    mc_std_error: mc.std_error,
                    mc_agrees: mc.agrees_with(mu.value, ORACLE_SIGMAS, mu.error),
                })
            } else {
                None
            };
            rows.push(MeasureRow {
                body: format!("b{i}"),
                density: format!("d{j}"),
                n,
                mu: mu.value,
                vol: vol.value,
                tolerance: mu.error,
                vol_tolerance: vol.error,
                oracle,
            });
        }
    }
    output("measure", &rows, options)
}

pub fn section(config: &RunConfig, options: Options) -> Result<Output, CliError> {
    let n = config.dimension;
    let bodies = config.bodies(n)?;
    let densities = config.densities(n)?;
    let directions = config.directions(n)?;
    let est = Estimator::new(n, config.spec_for(n))?;
    let mut rows = Vec::new();
    for (i, body) in bodies.iter().enumerate() {
        for (j, density) in densities.iter().enumerate() {
            for xi in &directions {
                let s = est.section_measure(body, density, xi)?;
                let oracle = if options.mc {
                    let mc = mc_section(body, density, xi, config.mc_samples, row_seed(config.seed, rows.len()))?;
                    Some(OracleColumns {
                        mc_mean: mc.mean,
                        mc_std_error: mc.std_error,
                        mc_agrees: mc.agrees_with(s.value, ORACLE_SIGMAS, s.error),
                    })
                } else {
                    None
                };
                rows.push(SectionRow {
                    body: format!("b{i}"),
                    density: format!("d{j}"),
                    n,
                    direction: xi.clone(),
                    value: s.value,
                    tolerance: s.error,
                    oracle,
                });
            }
        }
    }
    output("section", &rows, options)
}

pub fn max_section(config: &RunConfig, options: Options) -> Result<Output, CliError> {
    let n = config.dimension;
    let bodies = config.bodies(n)?;
    let densities = config.densities(n)?;
    let integrator = Integrator::new(n, config.spec_for(n))?;
    let mut rows = Vec::new();
    for (i, body) in bodies.iter().enumerate() {
        for (j, density) in densities.iter().enumerate() {
            let best = max_section_with(&integrator, body, density, config.search_resolution)?;
            rows.push(MaxSectionRow {
                body: format!("b{i}"),
                density: format!("d{j}"),
                n,
                direction: best.direction,
                value: best.value,
                search_resolution: config.search_resolution,
            });
        }
    }
    output("max-section", &rows, options)
}

fn hyperplane_rows(config: &RunConfig, n: usize) -> Result<Vec<InequalityReport>, CliError> {
    let bodies = config.bodies(n)?;
    let densities = config.densities(n)?;
    let spec = config.spec_for(n);
    let mut rows = Vec::new();
    for (i, body) in bodies.iter().enumerate() {
        for (j, density) in densities.iter().enumerate() {
            let r = hyperplane_report(body, density, &spec, config.search_resolution)?;
            rows.push(renamed(r, &format!("b{i}:d{j}")));
        }
    }
    Ok(rows)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairKind {
    Stability,
    Difference,
}

fn pair_rows(config: &RunConfig, n: usize, kind: PairKind) -> Result<Vec<InequalityReport>, CliError> {
    let pairs = config.pairs(n)?;
    let densities = config.densities(n)?;
    let spec = config.spec_for(n);
    let mut rows = Vec::new();
    for (label, k, l) in &pairs {
        for (j, density) in densities.iter().enumerate() {
            let pair = PairComparison::compute(k, l, density, &spec, config.search_resolution)?;
            let r = match kind {
                PairKind::Stability => pair.stability_report()?,
                PairKind::Difference => pair.difference_report()?,
            };
            rows.push(renamed(r, &format!("{label}:d{j}")));
        }
    }
    Ok(rows)
}

/// Volume-form and measure-form rows; the second flag is false if a passing
/// volume form ever came with a failing measure form.
fn volume_stability_rows(config: &RunConfig, n: usize) -> Result<(Vec<InequalityReport>, bool), CliError> {
    let spec = config.spec_for(n);
    let mut rows = Vec::new();
    let mut implication = true;
    for (label, k, l) in config.pairs(n)? {
        let r = volume_stability_report(&k, &l, &spec, config.search_resolution)?;
        implication &= r.implication_holds();
        rows.push(renamed(r.volume_form, &label));
        rows.push(renamed(r.measure_form, &label));
    }
    Ok((rows, implication))
}

fn volume_ratio_rows(config: &RunConfig, n: usize) -> Result<Vec<InequalityReport>, CliError> {
    let spec = config.spec_for(n);
    config
        .bodies(n)?
        .iter()
        .enumerate()
        .map(|(i, body)| {
            let r = volume_ratio_report(body, &spec, config.search_resolution)?;
            Ok(renamed(r, &format!("b{i}")))
        })
        .collect()
}

pub fn verify_hyperplane(config: &RunConfig, options: Options) -> Result<Output, CliError> {
    verified("verify-hyperplane", &hyperplane_rows(config, config.dimension)?, options)
}

pub fn verify_stability(config: &RunConfig, options: Options) -> Result<Output, CliError> {
    let rows = pair_rows(config, config.dimension, PairKind::Stability)?;
    verified("verify-stability", &rows, options)
}

pub fn verify_difference(config: &RunConfig, options: Options) -> Result<Output, CliError> {
    let rows = pair_rows(config, config.dimension, PairKind::Difference)?;
    verified("verify-difference", &rows, options)
}

pub fn verify_volume_stability(config: &RunConfig, options: Options) -> Result<Output, CliError> {
    let (rows, implication) = volume_stability_rows(config, config.dimension)?;
    let mut out = verified("verify-volume-stability", &rows, options)?;
    out.all_passed &= implication;
    Ok(out)
}

/// Random instance for the monotonicity lemma: `n ∈ {2,3,4}`, `a, b ∈ (0.1, 5)`,
/// `α` a degree-4 polynomial with squared coefficients.
pub fn lemma_ell_instance(rng: &mut ChaCha8Rng) -> (usize, f64, f64, SquaredCoefficientPolynomial) {
    let n = rng.gen_range(2..=4);
    let a = rng.gen_range(0.1..5.0);
    let b = rng.gen_range(0.1..5.0);
    let raw: Vec<f64> = (0..5).map(|_| rng.gen_range(-2.0..2.0)).collect();
    (n, a, b, SquaredCoefficientPolynomial::from_roots_of_coefficients(&raw))
}

pub fn lemmas(config: &RunConfig, options: Options) -> Result<Output, CliError> {
    let mut rows = Vec::new();
    for n in 2..=LEMMA_GAMMA_MAX_N {
        rows.extend(gamma_lemma_reports(n)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for i in 0..config.lemma_instances {
        let (n, a, b, alpha) = lemma_ell_instance(&mut rng);
        let r = lemma_ell_report(n, a, b, &alpha, LEMMA_ELL_TOLERANCE)?;
        rows.push(renamed(r, &i.to_string()));
    }
    verified("lemmas", &rows, options)
}

pub fn sweep(config: &RunConfig, options: Options) -> Result<Output, CliError> {
    let commands = config.commands.clone().unwrap_or_else(|| vec![SweepCommand::Hyperplane]);
    if commands.is_empty() {
        return Err(CliError::Config("commands must not be empty".into()));
    }
    let mut rows = Vec::new();
    let mut implication = true;
    for n in config.sweep_dimensions() {
        for command in &commands {
            match command {
                SweepCommand::Hyperplane => rows.extend(hyperplane_rows(config, n)?),
                SweepCommand::VolumeRatio => rows.extend(volume_ratio_rows(config, n)?),
                SweepCommand::Stability => rows.extend(pair_rows(config, n, PairKind::Stability)?),
                SweepCommand::Difference => rows.extend(pair_rows(config, n, PairKind::Difference)?),
                SweepCommand::VolumeStability => {
                    let (r, ok) = volume_stability_rows(config, n)?;
                    rows.extend(r);
                    implication &= ok;
                }
            }
        }
    }
    let mut out = verified("sweep", &rows, options)?;
    out.all_passed &= implication;
    Ok(out)
}
