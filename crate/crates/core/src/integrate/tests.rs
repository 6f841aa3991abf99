use super::*;
use crate::vortex::InteractionTable;
use alloc::vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn e(k: usize) -> ProjectivePoint {
    ProjectivePoint::basis(k)
}

fn random_config(seed: u64, gammas: &[f64]) -> VortexConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = gammas.iter().map(|_| ProjectivePoint::random(&mut rng)).collect();
    VortexConfig::new(points, gammas.to_vec()).unwrap()
}

fn smooth_specs() -> Vec<HamiltonianSpec> {
    vec![
        HamiltonianSpec::LogSin,
        HamiltonianSpec::Cosine,
        HamiltonianSpec::Table(InteractionTable::from_fn(0.0, 101, |d| (2.0 * d).cos() - 0.5 * d * d).unwrap()),
    ]
}

/// Sum of projective distances between corresponding points.
fn gap(a: &VortexConfig, b: &VortexConfig) -> f64 {
    a.points().iter().zip(b.points()).map(|(p, q)| p.distance(q)).sum()
}

#[test]
fn spec_validation() {
    assert!(IntegratorSpec::new(Method::Rk4Projected, 0.0, 1, 1).is_err());
    assert!(IntegratorSpec::new(Method::Rk4Projected, f64::NAN, 1, 1).is_err());
    assert!(IntegratorSpec::new(Method::Rk4Projected, 1e-3, 0, 1).is_err());
    assert!(IntegratorSpec::new(Method::Rk4Projected, 1e-3, 1, 0).is_err());
    assert!(IntegratorSpec::default().validate().is_ok());
    assert_eq!("midpoint_projected".parse::<Method>(), Ok(Method::MidpointProjected));
    assert!("euler".parse::<Method>().is_err());
    assert_eq!(alloc::format!("{}", Method::Rk4Projected), "rk4_projected");
}

#[test]
fn torus_fixed_configuration_does_not_move() {
    let c = VortexConfig::new(vec![e(0), e(1), e(2)], vec![1.0, 2.0, 3.0]).unwrap();
    for spec in smooth_specs() {
        for method in [Method::Rk4Projected, Method::MidpointProjected] {
            let next = step(&c, &spec, 0.1, method).unwrap();
            for (p, q) in c.points().iter().zip(next.points()) {
                assert!((p.rep() - q.rep()).norm() < 1e-14);
            }
        }
        let ispec = IntegratorSpec::new(Method::Rk4Projected, 1e-3, 500, 50).unwrap();
        let t = integrate(&c, &spec, &ispec).unwrap();
        for s in &t.samples {
            assert!(gap(&s.config, &c) < 1e-12);
        }
    }
}

#[test]
fn pair_distance_is_conserved_per_step() {
    let c = random_config(1, &[1.0, 2.5]);
    let d0 = c.pair_distances()[0].2;
    for spec in smooth_specs() {
        let next = step(&c, &spec, 1e-3, Method::Rk4Projected).unwrap();
        let d1 = next.pair_distances()[0].2;
        assert!((d1 - d0).abs() < 1e-13, "{}: {}", spec.name(), (d1 - d0).abs());
    }
}

/// Local error of one step of size `dt` against a fine reference.
fn local_error(c: &VortexConfig, spec: &HamiltonianSpec, dt: f64, method: Method) -> f64 {
    let coarse = step(c, spec, dt, method).unwrap();
    let mut fine = c.clone();
    for _ in 0..200 {
        fine = step(&fine, spec, dt / 200.0, Method::Rk4Projected).unwrap();
    }
    gap(&coarse, &fine)
}

#[test]
fn rk4_local_error_has_fifth_order() {
    let c = random_config(2, &[1.0, -2.0, 3.0]);
    for spec in smooth_specs() {
        let ratio = local_error(&c, &spec, 0.08, Method::Rk4Projected)
            / local_error(&c, &spec, 0.04, Method::Rk4Projected);
        assert!((26.0..38.0).contains(&ratio), "{}: ratio {ratio}", spec.name());
    }
}

#[test]
fn midpoint_local_error_has_third_order() {
    let c = random_config(3, &[1.0, -2.0, 3.0]);
    let spec = HamiltonianSpec::Cosine;
    let ratio = local_error(&c, &spec, 0.02, Method::MidpointProjected)
        / local_error(&c, &spec, 0.01, Method::MidpointProjected);
    assert!((7.0..9.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn conservation_two_vortices_log_sin() {
    let c = random_config(4, &[1.0, 1.0]);
    let t = integrate(&c, &HamiltonianSpec::LogSin, &IntegratorSpec::default()).unwrap();
    assert!(t.completed());
    assert!(t.max_energy_drift <= 1e-8, "{}", t.max_energy_drift);
    assert!(t.max_momentum_drift <= 1e-6, "{}", t.max_momentum_drift);
    let d0 = t.samples[0].distances[0].2;
    for s in &t.samples {
        assert!((s.distances[0].2 - d0).abs() <= 1e-6);
    }
    assert!(t.max_renormalization <= 1e-10, "{}", t.max_renormalization);
}

#[test]
fn conservation_three_vortices_cosine() {
    let c = random_config(5, &[1.0, 2.0, 3.0]);
    let t = integrate(&c, &HamiltonianSpec::Cosine, &IntegratorSpec::default()).unwrap();
    assert!(t.completed());
    assert!(t.max_energy_drift <= 1e-8, "{}", t.max_energy_drift);
    assert!(t.max_momentum_drift <= 1e-6, "{}", t.max_momentum_drift);
    assert!(t.max_renormalization <= 1e-10, "{}", t.max_renormalization);
}

#[test]
fn samples_follow_monitor_schedule() {
    let c = random_config(6, &[1.0, 2.0, 3.0]);
    let ispec = IntegratorSpec::new(Method::MidpointProjected, 1e-2, 25, 10).unwrap();
    let t = integrate(&c, &HamiltonianSpec::Cosine, &ispec).unwrap();
    let times: Vec<f64> = t.samples.iter().map(|s| s.t).collect();
    assert_eq!(times.len(), 4);
    for (got, want) in times.iter().zip([0.0, 0.1, 0.2, 0.25]) {
        assert!((got - want).abs() < 1e-12);
    }
    for s in &t.samples {
        for p in s.config.points() {
            assert!((p.rep().norm() - 1.0).abs() < 1e-15);
        }
    }
}

#[test]
fn close_approach_aborts_with_partial_trajectory() {
    let near = ProjectivePoint::from_real([1.0, 1e-3, 0.0]).unwrap();
    let c = VortexConfig::new(vec![e(0), near], vec![1.0, 1.0]).unwrap();
    let ispec = IntegratorSpec::new(Method::Rk4Projected, 1e-3, 100, 10).unwrap();
    let t = integrate(&c, &HamiltonianSpec::LogSin, &ispec).unwrap();
    assert!(matches!(t.termination, Termination::Collision { step: 1, i: 0, j: 1, .. }));
    assert_eq!(t.samples.len(), 1);
    // the smooth interaction has no singularity to resolve
    let t = integrate(&c, &HamiltonianSpec::Cosine, &ispec).unwrap();
    assert!(t.completed());
}

#[test]
fn colliding_start_is_an_error() {
    let c = VortexConfig::new(vec![e(0), e(0)], vec![1.0, 1.0]).unwrap();
    let r = integrate(&c, &HamiltonianSpec::LogSin, &IntegratorSpec::default());
    assert!(matches!(r, Err(Error::Collision { .. })));
}
