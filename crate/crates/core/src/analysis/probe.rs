//! Numerical exploration of momentum fibers: multi-start descent onto a target
//! Weyl point, local dimension counts at the minima, and orbit clustering.

#[allow(unused_imports)]
use nalgebra::{ComplexField, RealField};
use alloc::vec::Vec;
use nalgebra::DMatrix;
use rand::Rng;

use super::stabilizer::{classify_stabilizer_with, stabilizer_algebra, StabilizerType, RANK_TOL};
use crate::error::Result;
use crate::linalg;
use crate::projective::ProjectivePoint;
use crate::su3::{weyl_projection, WeylPoint};
use crate::vortex::{config_invariants_with, momentum_map, ConfigInvariants, VortexConfig};
use crate::Vec3;

/// Settings for [`minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentOptions {
    /// Central-difference step for the gradient.
    pub fd_step: f64,
    /// Objective value counted as converged.
    pub tol: f64,
    pub max_iter: usize,
    /// After convergence keep descending (up to `max_iter` in total) until
    /// progress stalls or the objective drops below `polish_tol`.
    pub polish_tol: Option<f64>,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self {
            fd_step: 1e-6,
            tol: 1e-12,
            max_iter: 10_000,
            polish_tol: Some(1e-28),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentOutcome {
    pub config: VortexConfig,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Moves every point along `x` expressed in the horizontal bases `bases`.
fn displace(c: &VortexConfig, bases: &[[Vec3; 4]], x: &[f64]) -> VortexConfig {
    let points: Vec<ProjectivePoint> = c
        .points()
        .iter()
        .zip(bases)
        .enumerate()
        .map(|(j, (z, b))| {
            let v = (0..4).fold(Vec3::zeros(), |acc, k| acc + b[k] * crate::C64::new(x[4 * j + k], 0.0));
            z.retract(&v)
        })
        .collect();
    c.with_points(points).expect("same strengths")
}

fn bases(c: &VortexConfig) -> Vec<[Vec3; 4]> {
    c.points().iter().map(|z| z.tangent_basis()).collect()
}

/// Gradient descent with Armijo backtracking on `objective`, in the tangent
/// chart `x -> normalize(Z_j + sum_k x_jk b_jk)` re-centred after every step.
pub fn minimize<F: Fn(&VortexConfig) -> f64>(start: &VortexConfig, objective: F, opts: &DescentOptions) -> DescentOutcome {
    let dim = 4 * start.len();
    let mut c = start.clone();
    let mut f = objective(&c);
    let mut step = 1.0;
    let mut converged = f < opts.tol;
    let mut iterations = 0;
    let polish = opts.polish_tol.unwrap_or(opts.tol);
    while iterations < opts.max_iter {
        if (converged && f < polish) || (converged && opts.polish_tol.is_none()) {
            break;
        }
        iterations += 1;
        let b = bases(&c);
        let mut x = alloc::vec![0.0; dim];
        let mut grad = alloc::vec![0.0; dim];
        for k in 0..dim {
            x[k] = opts.fd_step;
            let fp = objective(&displace(&c, &b, &x));
            x[k] = -opts.fd_step;
            let fm = objective(&displace(&c, &b, &x));
            x[k] = 0.0;
            grad[k] = (fp - fm) / (2.0 * opts.fd_step);
        }
        let g2: f64 = grad.iter().map(|g| g * g).sum();
        if !(g2 > 0.0) {
            break;
        }
        step *= 2.0;
        let mut accepted = false;
        while step * g2.sqrt() > 1e-18 {
            let trial: Vec<f64> = grad.iter().map(|g| -step * g).collect();
            let cand = displace(&c, &b, &trial);
            let fc = objective(&cand);
            if fc <= f - 1e-4 * step * g2 {
                c = cand;
                f = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        converged |= f < opts.tol;
    }
    DescentOutcome {
        config: c,
        value: f,
        iterations,
        converged,
    }
}

/// `|weyl(J(c)) - target|^2`.
pub fn weyl_residual(c: &VortexConfig, target: &WeylPoint) -> f64 {
    let l = weyl_projection(&momentum_map(c)).lambda();
    let t = target.lambda();
    (0..3).map(|k| (l[k] - t[k]) * (l[k] - t[k])).sum()
}

/// Classification threshold applied at probe minima. The descent stops at
/// `|weyl(J) - mu|` near roundoff, but where the momentum map is critical the
/// configuration error scales like the square root of the residual.
pub const PROBE_CLASSIFY_TOL: f64 = 1e-4;

/// Separation below which two invariant tuples count as the same orbit.
pub const CLUSTER_TOL: f64 = 1e-3;

/// Local data at a converged probe minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberPoint {
    pub config: VortexConfig,
    pub residual: f64,
    /// Rank of the derivative of chamber coordinates of `weyl(J)`.
    pub weyl_rank: usize,
    /// `4N - weyl_rank`.
    pub nullity: usize,
    pub stabilizer_dim: usize,
    /// `nullity - (8 - stabilizer_dim)`; meaningful where `weyl_rank == 2`.
    pub reduced_dim: i64,
    pub class: Option<StabilizerType>,
    pub invariants: Option<ConfigInvariants>,
}

impl FiberPoint {
    pub fn is_regular(&self) -> bool {
        self.weyl_rank == 2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StartOutcome {
    Converged(FiberPoint),
    Failed { value: f64, iterations: usize },
}

/// Rank of the derivative of `c -> chamber(weyl(J(c)))` by central differences.
pub fn weyl_jacobian_rank(c: &VortexConfig, fd_step: f64) -> usize {
    let b = bases(c);
    let dim = 4 * c.len();
    let chamber = |c: &VortexConfig| weyl_projection(&momentum_map(c)).chamber_coords();
    let mut jac = DMatrix::zeros(2, dim);
    let mut x = alloc::vec![0.0; dim];
    for k in 0..dim {
        x[k] = fd_step;
        let p = chamber(&displace(c, &b, &x));
        x[k] = -fd_step;
        let m = chamber(&displace(c, &b, &x));
        x[k] = 0.0;
        jac[(0, k)] = (p.0 - m.0) / (2.0 * fd_step);
        jac[(1, k)] = (p.1 - m.1) / (2.0 * fd_step);
    }
    let d = linalg::decompose(&jac);
    // finite differences carry ~fd_step^2 truncation error; keep the cut well above it
    let threshold = (RANK_TOL * d.values[0]).max(1e-6);
    d.values.iter().filter(|s| **s > threshold).count()
}

/// One descent of the fiber probe from `start`.
pub fn fiber_probe_start(start: &VortexConfig, mu: &WeylPoint, opts: &DescentOptions) -> StartOutcome {
    let out = minimize(start, |c| weyl_residual(c, mu), opts);
    if !out.converged {
        return StartOutcome::Failed {
            value: out.value,
            iterations: out.iterations,
        };
    }
    let c = out.config;
    let weyl_rank = weyl_jacobian_rank(&c, opts.fd_step);
    let nullity = 4 * c.len() - weyl_rank;
    let stabilizer_dim = stabilizer_algebra(&c).len();
    StartOutcome::Converged(FiberPoint {
        residual: out.value,
        weyl_rank,
        nullity,
        stabilizer_dim,
        reduced_dim: nullity as i64 - (8 - stabilizer_dim as i64),
        class: classify_stabilizer_with(&c, PROBE_CLASSIFY_TOL).ok(),
        invariants: config_invariants_with(&c, PROBE_CLASSIFY_TOL).ok(),
        config: c,
    })
}

/// Distinct orbits among converged points, by greedy clustering of invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitCluster {
    pub invariants: ConfigInvariants,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberProbeReport {
    pub target: WeylPoint,
    /// Target has a repeated eigenvalue, where the Weyl projection is not smooth.
    pub degenerate_target: bool,
    pub starts: usize,
    pub converged: Vec<FiberPoint>,
    /// Final objective values of starts that did not reach the tolerance.
    pub failures: Vec<f64>,
    pub clusters: Vec<OrbitCluster>,
}

impl FiberProbeReport {
    /// Fraction of converged points whose reduced dimension estimate equals `dim`.
    pub fn reduced_dim_fraction(&self, dim: i64) -> f64 {
        if self.converged.is_empty() {
            return 0.0;
        }
        let hits = self.converged.iter().filter(|p| p.reduced_dim == dim).count();
        hits as f64 / self.converged.len() as f64
    }

    /// Whether every converged point has the given type.
    pub fn all_classified_as(&self, t: StabilizerType) -> bool {
        !self.converged.is_empty() && self.converged.iter().all(|p| p.class == Some(t))
    }
}

/// Assembles per-start outcomes into a report.
pub fn summarize(mu: &WeylPoint, outcomes: Vec<StartOutcome>) -> FiberProbeReport {
    let starts = outcomes.len();
    let mut converged = Vec::new();
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            StartOutcome::Converged(p) => converged.push(p),
            StartOutcome::Failed { value, .. } => failures.push(value),
        }
    }
    let mut clusters: Vec<OrbitCluster> = Vec::new();
    for p in &converged {
        let Some(inv) = p.invariants else { continue };
        match clusters.iter_mut().find(|c| c.invariants.difference(&inv) < CLUSTER_TOL) {
            Some(c) => c.count += 1,
            None => clusters.push(OrbitCluster {
                invariants: inv,
                count: 1,
            }),
        }
    }
    FiberProbeReport {
        target: *mu,
        degenerate_target: mu.on_wall(crate::su3::DEGENERACY_TOL),
        starts,
        converged,
        failures,
        clusters,
    }
}

/// Random starting configurations with the given strengths.
pub fn random_starts<R: Rng + ?Sized>(gammas: &[f64], n: usize, rng: &mut R) -> Result<Vec<VortexConfig>> {
    (0..n)
        .map(|_| {
            let pts = gammas.iter().map(|_| ProjectivePoint::random(rng)).collect();
            VortexConfig::new(pts, gammas.to_vec())
        })
        .collect()
}

/// Sequential multi-start fiber probe.
pub fn fiber_probe<R: Rng + ?Sized>(
    gammas: &[f64],
    mu: &WeylPoint,
    n_starts: usize,
    rng: &mut R,
    opts: &DescentOptions,
) -> Result<FiberProbeReport> {
    let starts = random_starts(gammas, n_starts, rng)?;
    let outcomes = starts.iter().map(|s| fiber_probe_start(s, mu, opts)).collect();
    Ok(summarize(mu, outcomes))
}

/// Distance in chamber coordinates accepted as realizing a target.
pub const MIDPOINT_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct MidpointOutcome {
    pub target: WeylPoint,
    /// Best distance reached, in chamber coordinates.
    pub distance: f64,
    pub attempts: usize,
    pub realized: bool,
}

/// Searches for a configuration whose Weyl projection is the midpoint of those
/// of `p` and `q`, starting from `p`, then `q`, then up to `retries` random
/// configurations.
pub fn midpoint_realizability<R: Rng + ?Sized>(
    p: &VortexConfig,
    q: &VortexConfig,
    retries: usize,
    rng: &mut R,
) -> Result<MidpointOutcome> {
    let lp = weyl_projection(&momentum_map(p)).lambda();
    let lq = weyl_projection(&momentum_map(q)).lambda();
    let target = WeylPoint::new([0.5 * (lp[0] + lq[0]), 0.5 * (lp[1] + lq[1]), 0.5 * (lp[2] + lq[2])])?;
    let opts = DescentOptions {
        tol: MIDPOINT_TOL * MIDPOINT_TOL * 1e-2,
        max_iter: 2_000,
        polish_tol: None,
        ..DescentOptions::default()
    };
    let mut best = f64::INFINITY;
    let mut attempts = 0;
    let extra = random_starts(p.gammas(), retries, rng)?;
    for start in [p, q].into_iter().chain(extra.iter()) {
        attempts += 1;
        let out = minimize(start, |c| weyl_residual(c, &target), &opts);
        best = best.min(out.value.sqrt());
        if best <= MIDPOINT_TOL {
            break;
        }
    }
    Ok(MidpointOutcome {
        target,
        distance: best,
        attempts,
        realized: best <= MIDPOINT_TOL,
    })
}

#[cfg(test)]
#[path = "probe_tests.rs"]
mod tests;
