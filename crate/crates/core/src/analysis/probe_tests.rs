use super::*;
use crate::analysis::families::{canonical_representative, interior_target};
use crate::analysis::polytope::polytope_landmarks;
use alloc::vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const G: [f64; 3] = [1.0, 2.0, 3.0];

fn probe(mu: &WeylPoint, starts: usize, seed: u64) -> FiberProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    fiber_probe(&G, mu, starts, &mut rng, &DescentOptions::default()).unwrap()
}

#[test]
fn minimize_reaches_a_point() {
    let e = ProjectivePoint::basis;
    let start = VortexConfig::new(vec![ProjectivePoint::from_real([1.0, 0.3, 0.2]).unwrap()], vec![1.0]).unwrap();
    let f = |c: &VortexConfig| {
        let d = c.points()[0].distance(&e(0));
        d * d
    };
    let out = minimize(&start, f, &DescentOptions::default());
    assert!(out.converged);
    assert!(out.value < 1e-12);
    assert!(out.config.points()[0].distance(&e(0)) < 1e-6);
}

#[test]
fn minimize_reports_a_flat_objective() {
    let start = canonical_representative(StabilizerType::Generic, &G).unwrap();
    let out = minimize(&start, |_| 1.0, &DescentOptions::default());
    assert!(!out.converged);
    assert_eq!(out.config, start);
}

#[test]
fn residual_vanishes_on_own_projection() {
    let c = canonical_representative(StabilizerType::Generic, &G).unwrap();
    let mu = weyl_projection(&momentum_map(&c));
    assert_eq!(weyl_residual(&c, &mu), 0.0);
    assert_eq!(weyl_jacobian_rank(&c, 1e-6), 2);
}

#[test]
fn interior_probe_finds_two_dimensional_reduced_space() {
    let mu = interior_target(&G).unwrap();
    let r = probe(&mu, 8, 1);
    assert!(!r.degenerate_target);
    assert_eq!(r.converged.len(), 8);
    assert!(r.converged.iter().all(|p| p.is_regular() && p.residual < 1e-12));
    assert_eq!(r.reduced_dim_fraction(2), 1.0);
}

#[test]
fn probe_at_b_finds_one_orbit() {
    let l = polytope_landmarks(&G).unwrap();
    let r = probe(&l.b, 8, 2);
    assert!(r.all_classified_as(StabilizerType::TotallyOrthogonal));
    assert_eq!(r.clusters.len(), 1);
    let inv = r.clusters[0].invariants;
    assert!(inv.phase.is_none());
    assert!(inv.distances.iter().all(|d| (d - core::f64::consts::FRAC_PI_2).abs() < PROBE_CLASSIFY_TOL));
}

#[test]
fn probe_at_a_finds_triple_points() {
    let l = polytope_landmarks(&G).unwrap();
    let r = probe(&l.a, 8, 3);
    assert!(r.degenerate_target);
    assert!(r.all_classified_as(StabilizerType::TriplePoint));
    assert_eq!(r.clusters.len(), 1);
}

#[test]
fn summary_counts_failures() {
    let mu = interior_target(&G).unwrap();
    let r = summarize(&mu, vec![StartOutcome::Failed { value: 0.5, iterations: 10 }]);
    assert_eq!(r.starts, 1);
    assert_eq!(r.failures, vec![0.5]);
    assert_eq!(r.reduced_dim_fraction(2), 0.0);
    assert!(!r.all_classified_as(StabilizerType::Generic));
}

#[test]
fn midpoint_of_two_samples_is_realized() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for g in [[1.0, 1.0, 1.0], [1.0, 2.0, 3.0], [1.0, 1.0, -1.0]] {
        let starts = random_starts(&g, 2, &mut rng).unwrap();
        let out = midpoint_realizability(&starts[0], &starts[1], 5, &mut rng).unwrap();
        assert!(out.realized, "{g:?} {}", out.distance);
        let (lp, lq) = (
            weyl_projection(&momentum_map(&starts[0])).lambda(),
            weyl_projection(&momentum_map(&starts[1])).lambda(),
        );
        for k in 0..3 {
            assert!((out.target.lambda()[k] - 0.5 * (lp[k] + lq[k])).abs() < 1e-15);
        }
    }
}
