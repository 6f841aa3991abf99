use super::*;
use crate::su3::{random_algebra_element, random_special_unitary};
use alloc::vec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(k: usize) -> ProjectivePoint {
    ProjectivePoint::basis(k)
}

fn random_config(rng: &mut ChaCha8Rng, gammas: &[f64]) -> VortexConfig {
    let points = gammas.iter().map(|_| ProjectivePoint::random(rng)).collect();
    VortexConfig::new(points, gammas.to_vec()).unwrap()
}

fn random_tangent(rng: &mut ChaCha8Rng, c: &VortexConfig) -> ConfigTangent {
    let raw: Vec<Vec3> = (0..c.len())
        .map(|_| Vec3::from_fn(|_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
        .collect();
    ConfigTangent::project(c, &raw)
}

fn displaced(c: &VortexConfig, v: &ConfigTangent, t: f64) -> VortexConfig {
    let pts = c
        .points()
        .iter()
        .zip(&v.vecs)
        .map(|(z, w)| z.retract(&(w.vec * C64::new(t, 0.0))))
        .collect();
    c.with_points(pts).unwrap()
}

fn fd<F: Fn(&VortexConfig) -> f64>(c: &VortexConfig, v: &ConfigTangent, f: F) -> f64 {
    let h = 1e-5;
    (f(&displaced(c, v, h)) - f(&displaced(c, v, -h))) / (2.0 * h)
}

fn specs() -> Vec<HamiltonianSpec> {
    vec![
        HamiltonianSpec::LogSin,
        HamiltonianSpec::Cosine,
        HamiltonianSpec::Table(
            InteractionTable::from_fn(0.05, 401, |d| (2.0 * d).cos() + 0.2 * (4.0 * d).sin()).unwrap(),
        ),
    ]
}

#[test]
fn construction_validates() {
    assert_eq!(
        VortexConfig::new(vec![e(0)], vec![1.0, 2.0]),
        Err(Error::LengthMismatch { points: 1, gammas: 2 })
    );
    assert_eq!(VortexConfig::new(vec![], vec![]), Err(Error::EmptyConfig));
    assert_eq!(
        VortexConfig::new(vec![e(0), e(1)], vec![1.0, 0.0]),
        Err(Error::ZeroStrength { index: 1 })
    );
}

#[test]
fn tangent_base_mismatch_is_rejected() {
    let c = VortexConfig::new(vec![e(0), e(1)], vec![1.0, 1.0]).unwrap();
    let other = VortexConfig::new(vec![e(0), e(2)], vec![1.0, 1.0]).unwrap();
    let v = ConfigTangent::zero(&other);
    assert_eq!(symplectic_form(&c, &v, &v), Err(Error::BaseMismatch { index: 1 }));
    assert!(ConfigTangent::new(&c, vec![*e(0).rep(), *e(0).rep()]).is_err());
}

#[test]
fn calibration_recovers_standard_constant() {
    let k = CalibrationConstant::calibrate();
    assert!((k.0 - CalibrationConstant::STANDARD.0).abs() < 1e-8, "{k:?}");
}

#[test]
fn momentum_map_identity_holds() {
    // d<J, xi>(v) = Omega(xi_M, v)
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let c = random_config(&mut rng, &[1.0, -2.5, 0.7]);
        let xi = random_algebra_element(&mut rng);
        let v = random_tangent(&mut rng, &c);
        let lhs = fd(&c, &v, |c| su3::pairing(&momentum_map(c), &xi));
        let rhs = symplectic_form(&c, &generator(&c, &xi), &v).unwrap();
        assert!((lhs - rhs).abs() < 1e-8, "{lhs} vs {rhs}");
    }
}

#[test]
fn vector_field_satisfies_hamilton_equation() {
    // dH(v) = Omega(v, X_H)
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for spec in specs() {
        for _ in 0..10 {
            let c = random_config(&mut rng, &[1.3, -0.4, 2.0, 0.9]);
            let v = random_tangent(&mut rng, &c);
            let x = hamiltonian_vector_field(&c, &spec).unwrap();
            let lhs = fd(&c, &v, |c| hamiltonian(c, &spec).unwrap());
            let rhs = symplectic_form(&c, &v, &x).unwrap();
            assert!((lhs - rhs).abs() < 1e-6 * (1.0 + lhs.abs()), "{}: {lhs} vs {rhs}", spec.name());
        }
    }
}

#[test]
fn momentum_is_conserved_along_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for spec in specs() {
        let c = random_config(&mut rng, &[1.0, 2.0, 3.0]);
        let x = hamiltonian_vector_field(&c, &spec).unwrap();
        for xi in AlgebraBasis::standard().elements {
            let d = fd(&c, &x, |c| su3::pairing(&momentum_map(c), &xi));
            assert!(d.abs() < 1e-8, "{}: {d}", spec.name());
        }
    }
}

#[test]
fn momentum_map_is_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let c = random_config(&mut rng, &[1.0, -1.0, 0.5]);
    let g = random_special_unitary(&mut rng);
    let lhs = momentum_map(&c.act(&g).unwrap());
    let rhs = momentum_map(&c).conjugate(&g);
    assert!((lhs.matrix() - rhs.matrix()).norm() < 1e-13);
}

#[test]
fn momentum_examples() {
    let c = VortexConfig::new(vec![e(0), e(1), e(2)], vec![1.0, 1.0, 1.0]).unwrap();
    assert!(momentum_map(&c).frobenius_norm() < 1e-15);
    let j = momentum_single(&e(0));
    assert_eq!(j.eigenvalues().map(|x| (x * 3.0).round()), [-1.0, -1.0, 2.0]);
}

#[test]
fn hamiltonian_examples() {
    let c = VortexConfig::new(vec![e(0), e(1)], vec![2.0, 3.0]).unwrap();
    assert!(hamiltonian(&c, &HamiltonianSpec::LogSin).unwrap().abs() < 1e-15);
    assert!((hamiltonian(&c, &HamiltonianSpec::Cosine).unwrap() + 6.0).abs() < 1e-15);
    let near = VortexConfig::new(vec![e(0), e(0)], vec![1.0, 1.0]).unwrap();
    assert!(matches!(
        hamiltonian(&near, &HamiltonianSpec::LogSin),
        Err(Error::Collision { i: 0, j: 1, .. })
    ));
    assert!((hamiltonian(&near, &HamiltonianSpec::Cosine).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn every_pair_is_a_relative_equilibrium() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for spec in specs() {
        for _ in 0..5 {
            let c = random_config(&mut rng, &[1.0, -3.0]);
            for restrict in [false, true] {
                for w in [ResidualWeighting::Strength, ResidualWeighting::Unweighted] {
                    let r = re_residual_with(&c, &spec, restrict, w).unwrap();
                    assert!(r.residual < 1e-10 * (1.0 + r.velocity_norm), "{}: {r:?}", spec.name());
                }
            }
        }
    }
}

#[test]
fn totally_orthogonal_triple_is_a_relative_equilibrium() {
    let c = VortexConfig::new(vec![e(0), e(1), e(2)], vec![1.0, 2.0, 3.0]).unwrap();
    let r = re_residual(&c, &HamiltonianSpec::LogSin, true).unwrap();
    assert!(r.residual < 1e-12);
    // a relative equilibrium moves along the orbit of its velocity
    let x = hamiltonian_vector_field(&c, &HamiltonianSpec::LogSin).unwrap();
    let xm = generator(&c, &r.xi);
    for j in 0..3 {
        assert!((x.vec(j) - xm.vec(j)).norm() < 1e-12);
    }
}

#[test]
fn generic_triple_is_not_a_relative_equilibrium() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let c = random_config(&mut rng, &[1.0, 2.0, 3.0]);
    let r = re_residual(&c, &HamiltonianSpec::LogSin, false).unwrap();
    assert!(r.residual > 1e-3 * r.velocity_norm, "{r:?}");
    let u = re_residual_with(&c, &HamiltonianSpec::LogSin, false, ResidualWeighting::Unweighted).unwrap();
    assert!(u.residual > 1e-3 * u.velocity_norm);
}

#[test]
fn invariants_examples() {
    let c = VortexConfig::new(vec![e(0), e(1), e(2)], vec![1.0; 3]).unwrap();
    let inv = config_invariants(&c).unwrap();
    assert_eq!(inv.phase, None);
    assert!(inv.distances.iter().all(|d| (d - core::f64::consts::FRAC_PI_2).abs() < 1e-15));
    let pair = VortexConfig::new(vec![e(0), e(1)], vec![1.0; 2]).unwrap();
    assert!(matches!(config_invariants(&pair), Err(Error::UnsupportedSize { got: 2, .. })));
}

proptest! {
    #[test]
    fn hamiltonian_is_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_config(&mut rng, &[1.0, -0.5, 2.0]);
        let g = random_special_unitary(&mut rng);
        for spec in specs() {
            let h = hamiltonian(&c, &spec).unwrap();
            let hg = hamiltonian(&c.act(&g).unwrap(), &spec).unwrap();
            prop_assert!((h - hg).abs() < 1e-9 * (1.0 + h.abs()));
            let hp = hamiltonian(&c.permuted(&[2, 0, 1]), &spec).unwrap();
            prop_assert!((h - hp).abs() < 1e-9 * (1.0 + h.abs()));
        }
    }

    #[test]
    fn invariants_are_group_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_config(&mut rng, &[1.0, 1.0, 1.0]);
        let g = random_special_unitary(&mut rng);
        let a = config_invariants(&c).unwrap();
        let b = config_invariants(&c.act(&g).unwrap()).unwrap();
        prop_assert!(a.difference(&b) < 1e-9);
    }

    #[test]
    fn vector_field_is_equivariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_config(&mut rng, &[0.7, -1.2, 2.0]);
        let g = random_special_unitary(&mut rng);
        let x = hamiltonian_vector_field(&c, &HamiltonianSpec::LogSin).unwrap();
        let xg = hamiltonian_vector_field(&c.act(&g).unwrap(), &HamiltonianSpec::LogSin).unwrap();
        for j in 0..3 {
            prop_assert!((g * x.vec(j) - xg.vec(j)).norm() < 1e-9 * (1.0 + x.vec(j).norm()));
        }
    }
}
