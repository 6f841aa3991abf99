//! Verification suites. Every acceptance criterion is one function returning
//! a [`Criterion`] of individual checks; tolerances and time budgets are the
//! constants below and are never taken from user input.

use std::time::Instant;

use cpv_core::analysis::probe::{random_starts, MidpointOutcome};
use cpv_core::analysis::{
    allowed_velocity_dim, canonical_representative, interior_target, midpoint_realizability, momentum_jacobian_rank,
    polytope_landmarks, random_semi_orthogonal, stabilizer_algebra, symmetric_family_config, FiberProbeReport,
    StabilizerType, Table1Row, Table2Row, GENERIC_GAMMAS,
};
use cpv_core::integrate::{integrate, IntegratorSpec, Method};
use cpv_core::su3::{pairing, random_algebra_element};
use cpv_core::vortex::{
    generator, hamiltonian_vector_field, momentum_map, re_residual, symplectic_form_with, CalibrationConstant,
};
use cpv_core::{ConfigTangent, HamiltonianSpec, ProjectivePoint, Vec3, VortexConfig, WeylPoint, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::probe::parallel_fiber_probe;

pub const CALIBRATION_REL_TOL: f64 = 1e-6;
pub const CALIBRATION_BUDGET_S: f64 = 5.0;
pub const ENERGY_DRIFT_TOL: f64 = 1e-8;
pub const MOMENTUM_DRIFT_TOL: f64 = 1e-6;
pub const DISTANCE_DRIFT_TOL: f64 = 1e-6;
pub const CONSERVATION_BUDGET_S: f64 = 30.0;
pub const EQUILIBRIUM_SPEED_TOL: f64 = 1e-12;
pub const RE_RESIDUAL_TOL: f64 = 1e-8;
pub const LANDMARK_TOL: f64 = 1e-12;
pub const REDUCED_DIM_MIN_FRACTION: f64 = 0.9;
pub const FIBER_STARTS: usize = 200;
pub const FIBER_BUDGET_S: f64 = 120.0;
pub const MIDPOINT_PAIRS: usize = 100;
pub const MIDPOINT_MIN_SUCCESSES: usize = 95;
/// Random restarts per pair after starting from both endpoints.
pub const MIDPOINT_RETRIES: usize = 5;

/// Seed of every random draw in the suites.
pub const SUITE_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Bound the value is compared against.
    pub bound: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound,
            passed: value <= bound,
            detail: None,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound,
            passed: value >= bound,
            detail: None,
        }
    }

    pub fn equal(name: impl Into<String>, got: usize, want: usize) -> Self {
        Self {
            name: name.into(),
            value: got as f64,
            bound: want as f64,
            passed: got == want,
            detail: None,
        }
    }

    pub fn holds(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            value: ok as u8 as f64,
            bound: 1.0,
            passed: ok,
            detail: Some(detail.into()),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_seconds: Option<f64>,
    pub passed: bool,
}

impl Criterion {
    fn finish(id: u8, title: &'static str, checks: Vec<Check>, start: Instant, budget: Option<f64>) -> Self {
        let seconds = start.elapsed().as_secs_f64();
        let passed = checks.iter().all(|c| c.passed) && budget.is_none_or(|b| seconds <= b);
        Self {
            id,
            title,
            checks,
            seconds,
            budget_seconds: budget,
            passed,
        }
    }

    /// The first failing check, or the time budget.
    pub fn failure(&self) -> Option<String> {
        if let Some(c) = self.checks.iter().find(|c| !c.passed) {
            return Some(format!("{}: {:e} vs bound {:e}{}", c.name, c.value, c.bound, c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()));
        }
        match self.budget_seconds {
            Some(b) if self.seconds > b => Some(format!("took {:.1} s, budget {b} s", self.seconds)),
            _ => None,
        }
    }
}

/// Named groups of criteria run by `cpv verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Calibration,
    Conservation,
    Stabilizers,
    Tables,
    Landmarks,
    ReFamilies,
    Fiber,
}

impl Suite {
    pub const ALL: [Self; 7] = [
        Self::Calibration,
        Self::Conservation,
        Self::Stabilizers,
        Self::Tables,
        Self::Landmarks,
        Self::ReFamilies,
        Self::Fiber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Calibration => "calibration",
            Self::Conservation => "conservation",
            Self::Stabilizers => "stabilizers",
            Self::Tables => "tables",
            Self::Landmarks => "landmarks",
            Self::ReFamilies => "re_families",
            Self::Fiber => "fiber",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn criteria(self) -> &'static [u8] {
        match self {
            Self::Calibration => &[1],
            Self::Conservation => &[2, 3],
            Self::Stabilizers => &[6],
            Self::Tables => &[7],
            Self::Landmarks => &[8, 10],
            Self::ReFamilies => &[4, 5],
            Self::Fiber => &[9],
        }
    }

    pub fn run(self) -> Vec<Criterion> {
        self.criteria().iter().map(|&k| criterion(k)).collect()
    }
}

/// Runs acceptance criterion `k` (1 to 10).
pub fn criterion(k: u8) -> Criterion {
    match k {
        1 => calibration(),
        2 => conservation(),
        3 => equilibria(),
        4 => pair_relative_equilibria(),
        5 => relative_equilibrium_families(),
        6 => rank_stabilizer_duality(),
        7 => velocity_tables(),
        8 => landmarks(),
        9 => fiber_probes(),
        10 => polytope_convexity(),
        _ => panic!("criteria are numbered 1 to 10, got {k}"),
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    r.set_stream(stream);
    r
}

fn random_config(rng: &mut ChaCha8Rng, gammas: &[f64]) -> VortexConfig {
    let pts = gammas.iter().map(|_| ProjectivePoint::random(rng)).collect();
    VortexConfig::new(pts, gammas.to_vec()).expect("nonzero strengths")
}

/// Strengths with magnitudes in `[0.5, 3]` and random signs.
fn random_gammas(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let g = rng.random_range(0.5..3.0);
            if rng.random_bool(0.5) { g } else { -g }
        })
        .collect()
}

fn random_tangent(rng: &mut ChaCha8Rng, c: &VortexConfig) -> ConfigTangent {
    let raw: Vec<Vec3> = (0..c.len())
        .map(|_| Vec3::from_fn(|_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
        .collect();
    ConfigTangent::project(c, &raw)
}

fn displaced(c: &VortexConfig, v: &ConfigTangent, t: f64) -> VortexConfig {
    let pts = c.points().iter().zip(&v.vecs).map(|(z, w)| z.retract(&(w.vec * C64::new(t, 0.0)))).collect();
    c.with_points(pts).expect("same strengths")
}

/// `d<J, xi>(v) = Omega(xi_M, v)` with `d<J, xi>` by central differences.
pub fn calibration() -> Criterion {
    let start = Instant::now();
    let kappa = CalibrationConstant::calibrate();
    let mut checks = vec![Check::at_most(
        "calibrated kappa vs -2 (relative)",
        (kappa.0 - CalibrationConstant::STANDARD.0).abs() / 2.0,
        CALIBRATION_REL_TOL,
    )];
    for n in [2usize, 3] {
        let mut rng = rng(n as u64);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let g = random_gammas(&mut rng, n);
            let c = random_config(&mut rng, &g);
            let xi = random_algebra_element(&mut rng);
            let v = random_tangent(&mut rng, &c);
            let h = 1e-5;
            let f = |t: f64| pairing(&momentum_map(&displaced(&c, &v, t)), &xi);
            let lhs = (f(h) - f(-h)) / (2.0 * h);
            let rhs = symplectic_form_with(kappa, &c, &generator(&c, &xi), &v).expect("tangents share the base");
            worst = worst.max((lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE));
        }
        checks.push(Check::at_most(format!("N={n}: worst relative error over 100 triples"), worst, CALIBRATION_REL_TOL));
    }
    Criterion::finish(1, "calibration identity", checks, start, Some(CALIBRATION_BUDGET_S))
}

/// Energy, momentum and pair-distance conservation under RK4.
pub fn conservation() -> Criterion {
    let start = Instant::now();
    let ispec = IntegratorSpec::new(Method::Rk4Projected, 1e-3, 10_000, 100).expect("valid settings");
    let c3 = random_config(&mut rng(10), &[1.0, 2.0, 3.0]);
    let t3 = integrate(&c3, &HamiltonianSpec::LogSin, &ispec).expect("non-colliding start");
    let mut checks = vec![
        Check::holds("N=3 run completed", t3.completed(), format!("{:?}", t3.termination)),
        Check::at_most("N=3 relative energy drift", t3.max_energy_drift, ENERGY_DRIFT_TOL),
        Check::at_most("N=3 momentum drift (Frobenius)", t3.max_momentum_drift, MOMENTUM_DRIFT_TOL),
    ];
    let c2 = random_config(&mut rng(11), &[1.0, 2.0]);
    let every_step = IntegratorSpec { monitor_every: 1, ..ispec };
    let t2 = integrate(&c2, &HamiltonianSpec::LogSin, &every_step).expect("non-colliding start");
    let d0 = c2.points()[0].distance(&c2.points()[1]);
    let drift = t2.samples.iter().map(|s| (s.distances[0].2 - d0).abs()).fold(0.0, f64::max);
    checks.push(Check::holds("N=2 run completed", t2.completed(), format!("{:?}", t2.termination)));
    checks.push(Check::at_most("N=2 distance drift", drift, DISTANCE_DRIFT_TOL));
    Criterion::finish(2, "conservation", checks, start, Some(CONSERVATION_BUDGET_S))
}

/// Vanishing vector field at the torus-fixed configurations.
pub fn equilibria() -> Criterion {
    let start = Instant::now();
    let e = ProjectivePoint::basis;
    let mut worst: f64 = 0.0;
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let c = VortexConfig::new(perm.iter().map(|&k| e(k)).collect(), vec![1.0, 2.0, 3.0]).expect("valid");
        for spec in [HamiltonianSpec::LogSin, HamiltonianSpec::Cosine] {
            worst = worst.max(hamiltonian_vector_field(&c, &spec).expect("no collision").max_norm());
        }
    }
    let pair = VortexConfig::new(vec![e(0), e(1)], vec![1.0, 2.0]).expect("valid");
    let pair_speed = hamiltonian_vector_field(&pair, &HamiltonianSpec::LogSin).expect("no collision").max_norm();
    let checks = vec![
        Check::at_most("max |X_H| over the 6 torus-fixed triples", worst, EQUILIBRIUM_SPEED_TOL),
        Check::at_most("|X_H| at the orthogonal pair", pair_speed, EQUILIBRIUM_SPEED_TOL),
    ];
    Criterion::finish(3, "equilibria", checks, start, None)
}

/// Every two-vortex configuration is a relative equilibrium.
pub fn pair_relative_equilibria() -> Criterion {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (s, gammas) in [[1.0, 1.0], [1.0, -1.0], [2.0, 3.0]].iter().enumerate() {
        let mut rng = rng(40 + s as u64);
        let worst = (0..100)
            .map(|_| re_residual(&random_config(&mut rng, gammas), &HamiltonianSpec::LogSin, false).expect("no collision").residual)
            .fold(0.0, f64::max);
        checks.push(Check::at_most(format!("Gamma={gammas:?}: worst residual over 100 configs"), worst, RE_RESIDUAL_TOL));
    }
    Criterion::finish(4, "two-vortex relative equilibria", checks, start, None)
}

/// Semi-orthogonal triples and the two cyclically symmetric families.
pub fn relative_equilibrium_families() -> Criterion {
    let start = Instant::now();
    let residual = |c: &VortexConfig| re_residual(c, &HamiltonianSpec::LogSin, false).expect("no collision").residual;
    let mut rng = rng(50);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let g = random_gammas(&mut rng, 3);
        worst = worst.max(residual(&random_semi_orthogonal(&g, &mut rng).expect("valid")));
    }
    let mut checks = vec![Check::at_most("semi-orthogonal: worst residual over 20", worst, RE_RESIDUAL_TOL)];
    for j in [1u8, 2] {
        let mut worst: f64 = 0.0;
        let mut found = 0;
        while found < 20 {
            let gamma = rng.random_range(0.5..3.0);
            let c = symmetric_family_config(j, &ProjectivePoint::random(&mut rng), gamma).expect("valid");
            if c.min_pair_distance().expect("three points").2 < 1e-3 {
                continue;
            }
            found += 1;
            worst = worst.max(residual(&c));
        }
        checks.push(Check::at_most(format!("symmetry family {j}: worst residual over 20"), worst, RE_RESIDUAL_TOL));
    }
    Criterion::finish(5, "relative-equilibrium families", checks, start, None)
}

/// `rank DJ + dim g_x = 8`.
pub fn rank_stabilizer_duality() -> Criterion {
    let start = Instant::now();
    let g = [1.0, 2.0, 3.0];
    let mut checks: Vec<Check> = StabilizerType::ALL_TRIPLE
        .iter()
        .map(|&t| {
            let c = canonical_representative(t, &g).expect("valid");
            let (rank, stab) = (momentum_jacobian_rank(&c), stabilizer_algebra(&c).len());
            Check::equal(format!("{t}: rank + stabilizer dim"), rank + stab, 8)
                .with_detail(format!("rank {rank}, stabilizer {stab}"))
        })
        .collect();
    let mut rng = rng(60);
    let bad = (0..50)
        .filter(|_| {
            let c = random_config(&mut rng, &g);
            momentum_jacobian_rank(&c) + stabilizer_algebra(&c).len() != 8
        })
        .count();
    checks.push(Check::equal("random configs violating the identity (of 50)", bad, 0));
    Criterion::finish(6, "rank/stabilizer duality", checks, start, None)
}

/// Allowed-velocity dimensions on the representatives of every table row.
pub fn velocity_tables() -> Criterion {
    let start = Instant::now();
    let mut checks = Vec::new();
    for gammas in [[1.0, 1.0], [1.0, -1.0], [2.0, 3.0]] {
        for row in Table1Row::ALL {
            let got = row.representative(gammas).map(|c| allowed_velocity_dim(&c));
            checks.push(match got {
                Ok(d) => Check::equal(format!("N=2 {} Gamma={gammas:?}", row.name()), d, row.expected()),
                Err(e) => Check::holds(format!("N=2 {} Gamma={gammas:?}", row.name()), false, e.to_string()),
            });
        }
    }
    for row in Table2Row::ALL {
        let got = row.representative(GENERIC_GAMMAS).map(|c| allowed_velocity_dim(&c));
        checks.push(match got {
            Ok(d) => Check::equal(format!("N=3 {} Gamma={GENERIC_GAMMAS:?}", row.name()), d, row.expected()),
            Err(e) => Check::holds(format!("N=3 {}", row.name()), false, e.to_string()),
        });
    }
    Criterion::finish(7, "allowed-velocity tables", checks, start, None)
}

fn weyl_error(w: &WeylPoint, want: [f64; 3]) -> f64 {
    w.lambda().iter().zip(want).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn landmarks() -> Criterion {
    let start = Instant::now();
    let l1 = polytope_landmarks(&[1.0, 1.0, 1.0]).expect("valid");
    let l2 = polytope_landmarks(&[1.0, 1.0, -1.0]).expect("valid");
    let l3 = polytope_landmarks(&[1.0, 2.0, 3.0]).expect("valid");
    let spread = |l: &cpv_core::analysis::PolytopeLandmarks| {
        l.c[0].distance(&l.c[1]).max(l.c[0].distance(&l.c[2])).max(l.c[1].distance(&l.c[2]))
    };
    let checks = vec![
        Check::at_most("Gamma=(1,1,1): b = 0", weyl_error(&l1.b, [0.0; 3]), LANDMARK_TOL),
        Check::at_most("Gamma=(1,1,1): c1 = c2 = c3", spread(&l1), LANDMARK_TOL),
        Check::at_most("Gamma=(1,1,-1): a = c1", l2.a.distance(&l2.c_k(1)), LANDMARK_TOL),
        Check::at_most("Gamma=(1,2,3): a = (4,-2,-2)", weyl_error(&l3.a, [4.0, -2.0, -2.0]), LANDMARK_TOL),
        Check::at_most("Gamma=(1,2,3): b = (1,0,-1)", weyl_error(&l3.b, [1.0, 0.0, -1.0]), LANDMARK_TOL),
    ];
    Criterion::finish(8, "polytope landmarks", checks, start, None)
}

/// Multi-start fiber probes at an interior regular value and at the vertices a and b.
pub fn fiber_probes() -> Criterion {
    let start = Instant::now();
    let g = [1.0, 2.0, 3.0];
    let l = polytope_landmarks(&g).expect("valid");
    let interior = interior_target(&g).expect("valid");
    let probe = |mu: &WeylPoint, stream| parallel_fiber_probe(&g, mu, FIBER_STARTS, SUITE_SEED, stream).expect("valid");
    let summary = |r: &FiberProbeReport| format!("{} of {} starts converged", r.converged.len(), r.starts);
    let ri = probe(&interior, 90);
    let rb = probe(&l.b, 91);
    let ra = probe(&l.a, 92);
    let checks = vec![
        Check::holds("interior: some start converged", !ri.converged.is_empty(), summary(&ri)),
        Check::at_least("interior: fraction with reduced dimension 2", ri.reduced_dim_fraction(2), REDUCED_DIM_MIN_FRACTION)
            .with_detail(summary(&ri)),
        Check::holds("b: all converged points TotallyOrthogonal", rb.all_classified_as(StabilizerType::TotallyOrthogonal), summary(&rb)),
        Check::holds("a: all converged points TriplePoint", ra.all_classified_as(StabilizerType::TriplePoint), summary(&ra)),
    ];
    Criterion::finish(9, "fiber probes", checks, start, Some(FIBER_BUDGET_S))
}

/// Midpoints of pairs of attained Weyl points are attained.
pub fn polytope_convexity() -> Criterion {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (s, g) in [[1.0, 1.0, 1.0], [1.0, 2.0, 3.0], [1.0, 1.0, -1.0]].iter().enumerate() {
        let outcomes: Vec<MidpointOutcome> = (0..MIDPOINT_PAIRS)
            .into_par_iter()
            .map(|k| {
                let mut rng = rng(1000 * (s as u64 + 1) + k as u64);
                let pair = random_starts(g, 2, &mut rng).expect("valid");
                midpoint_realizability(&pair[0], &pair[1], MIDPOINT_RETRIES, &mut rng).expect("valid")
            })
            .collect();
        let ok = outcomes.iter().filter(|o| o.realized).count();
        let worst = outcomes.iter().map(|o| o.distance).fold(0.0, f64::max);
        checks.push(
            Check::at_least(format!("Gamma={g:?}: realized midpoints of {MIDPOINT_PAIRS}"), ok as f64, MIDPOINT_MIN_SUCCESSES as f64)
                .with_detail(format!("worst distance {worst:e}")),
        );
    }
    Criterion::finish(10, "polytope convexity", checks, start, None)
}
