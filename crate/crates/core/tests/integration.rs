use std::f64::consts::{PI, SQRT_2};

use hyperslice::quadrature::{self, sphere_rule, unit_interval_rule};
use hyperslice::specfun::sphere_area;
use hyperslice::{Body, Density, DensityForm, Estimator, Integrator, QuadratureSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(n: usize) -> QuadratureSpec {
    QuadratureSpec::for_dimension(n)
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 0.1 && r <= 1.0 {
            return v.iter().map(|x| x / r).collect();
        }
    }
}

fn bodies(n: usize) -> Vec<Body> {
    let scales: Vec<f64> = (0..n).map(|i| 1.0 + 0.25 * i as f64).collect();
    let mut normals: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    normals.push(vec![1.0; n]);
    let mut offsets = vec![1.0; n];
    offsets.push(1.5);
    vec![
        Body::ball(n, 1.1).unwrap(),
        Body::ellipsoid(scales.clone()).unwrap(),
        Body::lp_ball(1.0, scales.clone()).unwrap(),
        Body::lp_ball(3.0, vec![1.0; n]).unwrap(),
        Body::polytope(normals, offsets).unwrap(),
    ]
}

#[test]
fn measure_examples() {
    let lebesgue3 = Density::lebesgue(3).unwrap();
    let ball = Body::ball(3, 1.0).unwrap();
    let mu = quadrature::measure(&ball, &lebesgue3, &spec(3)).unwrap();
    assert!((mu - 4.0 * PI / 3.0).abs() < 1e-6);

    let gaussian = Density::gaussian(2, 1.0).unwrap();
    let disc = Body::ball(2, 1.0).unwrap();
    let mu = quadrature::measure(&disc, &gaussian, &spec(2)).unwrap();
    assert!((mu - 2.0 * PI * (1.0 - (-0.5f64).exp())).abs() < 1e-6);

    // the square's gauge has corners, so the circle rule needs many nodes
    let square = Body::cube(2, 1.0).unwrap();
    let fine = QuadratureSpec::new(16_384, 4, 2.0).unwrap();
    let mu = quadrature::measure(&square, &Density::lebesgue(2).unwrap(), &fine).unwrap();
    assert!((mu - 4.0).abs() < 1e-6, "{mu}");
}

#[test]
fn volume_examples() {
    // Cube edges make the integrand non-smooth and convergence second
    // order; the reported error bound must still cover the truth.
    let cube = Body::cube(3, 1.0).unwrap();
    let est = Estimator::new(3, QuadratureSpec::new(1_200, 4, 2.0).unwrap()).unwrap();
    let v = est.volume(&cube).unwrap();
    assert!((v.value - 8.0).abs() < 2e-5, "{v:?}");
    assert!((v.value - 8.0).abs() <= v.error, "{v:?}");
    let v = quadrature::volume(&Body::ball(4, 1.0).unwrap(), &spec(4)).unwrap();
    assert!((v - PI * PI / 2.0).abs() < 1e-6);
    let v = quadrature::volume(&Body::ellipsoid(vec![2.0, 1.0]).unwrap(), &spec(2)).unwrap();
    assert!((v - 2.0 * PI).abs() < 1e-6);
}

#[test]
fn section_examples() {
    let square = Body::cube(2, 1.0).unwrap();
    let f = Density::lebesgue(2).unwrap();
    let s = quadrature::section_measure(&square, &f, &[0.0, 1.0], &spec(2)).unwrap();
    assert!((s - 2.0).abs() < 1e-9);
    let d = [1.0 / SQRT_2, 1.0 / SQRT_2];
    let s = quadrature::section_measure(&square, &f, &d, &spec(2)).unwrap();
    assert!((s - 2.0 * SQRT_2).abs() < 1e-9);

    let g = Density::gaussian(2, 1.0).unwrap();
    let disc = Body::ball(2, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let xi = random_unit(&mut rng, 2);
        let s = quadrature::section_measure(&disc, &g, &xi, &spec(2)).unwrap();
        assert!((s - 1.7112487).abs() < 1e-6);
    }
    assert!(quadrature::section_measure(&disc, &g, &[1.0, 1.0], &spec(2)).is_err());
}

#[test]
fn sphere_rule_examples() {
    let rule = sphere_rule(3, &spec(3)).unwrap();
    let total: f64 = rule.weights().iter().sum();
    assert!((total - 4.0 * PI).abs() < 1e-8);
    let rule = sphere_rule(1, &spec(2)).unwrap();
    assert_eq!(rule.weights(), &[1.0, 1.0]);
    for n in 2..=4 {
        let total: f64 = sphere_rule(n, &spec(n)).unwrap().weights().iter().sum();
        assert!((total / sphere_area(n).unwrap() - 1.0).abs() < 1e-9);
    }
    assert!(sphere_rule(5, &spec(4)).is_err());
}

#[test]
fn lebesgue_measure_equals_volume() {
    for n in 2..=4 {
        let integrator = Integrator::new(n, spec(n)).unwrap();
        let one = Density::lebesgue(n).unwrap();
        for body in bodies(n) {
            let mu = integrator.measure(&body, &one).unwrap();
            let vol = integrator.volume(&body).unwrap();
            assert!((mu - vol).abs() <= 1e-8 * vol, "{body:?}: {mu} vs {vol}");
        }
    }
}

#[test]
fn measure_is_monotone_under_inclusion() {
    for n in 2..=4 {
        let integrator = Integrator::new(n, spec(n)).unwrap();
        let f = Density::new(n, DensityForm::RationalDecay { s: 1.0 }).unwrap();
        for body in bodies(n) {
            let bigger = body.scaled(1.05).unwrap();
            let a = integrator.measure(&body, &f).unwrap();
            let b = integrator.measure(&bigger, &f).unwrap();
            assert!(a <= b + 1e-10);
        }
        let l1 = Body::lp_ball(1.0, vec![1.0; n]).unwrap();
        let l2 = Body::lp_ball(2.0, vec![1.0; n]).unwrap();
        assert!(integrator.measure(&l1, &f).unwrap() <= integrator.measure(&l2, &f).unwrap() + 1e-10);
    }
}

#[test]
fn rotation_invariant_sections_are_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 2..=4 {
        let integrator = Integrator::new(n, spec(n)).unwrap();
        let ball = Body::ball(n, 1.3).unwrap();
        let f = Density::gaussian(n, 0.9).unwrap();
        let values: Vec<f64> = (0..100)
            .map(|_| integrator.section_measure(&ball, &f, &random_unit(&mut rng, n)).unwrap())
            .collect();
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(hi - lo <= 1e-8 * hi, "n = {n}: {lo} .. {hi}");
    }
}

/// In the plane the section is a segment; integrate `f` along it directly.
#[test]
fn planar_sections_match_line_integrals() {
    let (nodes, weights) = unit_interval_rule(40);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let densities = [
        Density::gaussian(2, 0.7).unwrap(),
        Density::new(2, DensityForm::RationalDecay { s: 2.0 }).unwrap(),
    ];
    let integrator = Integrator::new(2, spec(2)).unwrap();
    for body in bodies(2) {
        for f in &densities {
            for _ in 0..10 {
                let xi = random_unit(&mut rng, 2);
                let theta = [-xi[1], xi[0]];
                let rho = body.radial(&theta).unwrap();
                let half: f64 = nodes
                    .iter()
                    .zip(&weights)
                    .map(|(s, w)| w * rho * f.eval(&[s * rho * theta[0], s * rho * theta[1]]).unwrap())
                    .sum();
                let direct = integrator.section_measure(&body, f, &xi).unwrap();
                assert!((direct - 2.0 * half).abs() < 1e-10, "{direct} vs {}", 2.0 * half);
            }
        }
    }
}

#[test]
fn refinement_changes_stay_within_error_estimates() {
    for n in 2..=4 {
        let est = Estimator::new(n, spec(n)).unwrap();
        let doubled = Estimator::new(n, spec(n).refined()).unwrap();
        let f = Density::gaussian(n, 1.0).unwrap();
        for body in bodies(n) {
            let a = est.measure(&body, &f).unwrap();
            let b = doubled.measure(&body, &f).unwrap();
            assert!((a.value - b.value).abs() <= a.error + 1e-12, "{body:?}: {a:?} vs {b:?}");
        }
    }
}

#[test]
fn antipodal_sections_agree_bitwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for n in 2..=4 {
        let integrator = Integrator::new(n, spec(n)).unwrap();
        let f = Density::gaussian(n, 1.2).unwrap();
        for body in bodies(n) {
            let xi = random_unit(&mut rng, n);
            let neg: Vec<f64> = xi.iter().map(|x| -x).collect();
            assert_eq!(
                integrator.section_measure(&body, &f, &xi).unwrap(),
                integrator.section_measure(&body, &f, &neg).unwrap()
            );
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let n = 4;
            let f = Density::gaussian(n, 1.0).unwrap();
            let body = &bodies(n)[4];
            let integrator = Integrator::new(n, spec(n)).unwrap();
            (
                integrator.measure(body, &f).unwrap().to_bits(),
                integrator.section_measure(body, &f, &[0.5, 0.5, 0.5, 0.5]).unwrap().to_bits(),
            )
        })
    };
    assert_eq!(run(1), run(3));
}
