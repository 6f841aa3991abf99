//! Explicit Runge-Kutta integration of the vortex flow on unit representatives,
//! renormalized after every step, with energy and momentum drift monitoring.
//!
//! The lifted field `Z_j' = X_j(Z)` is horizontal, so it preserves `|Z_j|`; the
//! schemes integrate it in C^3 and then project back to the unit sphere.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::projective::ProjectivePoint;
use crate::su3::{weyl_projection, CoalgebraElement, WeylPoint};
use crate::vortex::{hamiltonian, hamiltonian_vector_field, momentum_map, HamiltonianSpec, VortexConfig};
use crate::{Vec3, C64};

/// One-step scheme; both renormalize after the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Classical fourth-order Runge-Kutta.
    #[default]
    Rk4Projected,
    /// Explicit midpoint rule (second order).
    MidpointProjected,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Rk4Projected => "rk4_projected",
            Self::MidpointProjected => "midpoint_projected",
        }
    }

    /// Global order of accuracy.
    pub fn order(self) -> u32 {
        match self {
            Self::Rk4Projected => 4,
            Self::MidpointProjected => 2,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rk4_projected" => Ok(Self::Rk4Projected),
            "midpoint_projected" => Ok(Self::MidpointProjected),
            _ => Err(Error::InvalidIntegrator("method must be rk4_projected or midpoint_projected")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSpec {
    pub method: Method,
    pub dt: f64,
    pub steps: usize,
    /// Record a sample every this many steps (the final state is always recorded).
    pub monitor_every: usize,
}

impl IntegratorSpec {
    pub fn new(method: Method, dt: f64, steps: usize, monitor_every: usize) -> Result<Self> {
        let spec = Self {
            method,
            dt,
            steps,
            monitor_every,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidIntegrator("dt must be positive and finite"));
        }
        if self.steps == 0 {
            return Err(Error::InvalidIntegrator("steps must be at least 1"));
        }
        if self.monitor_every == 0 {
            return Err(Error::InvalidIntegrator("monitor_every must be at least 1"));
        }
        Ok(())
    }
}

impl Default for IntegratorSpec {
    /// `dt = 1e-3` over ten time units.
    fn default() -> Self {
        Self {
            method: Method::Rk4Projected,
            dt: 1e-3,
            steps: 10_000,
            monitor_every: 100,
        }
    }
}

/// Result of a single step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub config: VortexConfig,
    /// Largest `| |Z_j| - 1 |` removed by the final renormalization.
    pub renormalization: f64,
}

fn field(gammas: &[f64], reps: &[Vec3], spec: &HamiltonianSpec) -> Result<Vec<Vec3>> {
    let points = reps
        .iter()
        .map(|v| ProjectivePoint::new(*v))
        .collect::<Result<Vec<_>>>()?;
    let c = VortexConfig::new(points, gammas.to_vec())?;
    Ok(hamiltonian_vector_field(&c, spec)?
        .vecs
        .into_iter()
        .map(|t| t.vec)
        .collect())
}

fn axpy(base: &[Vec3], k: &[Vec3], h: f64) -> Vec<Vec3> {
    base.iter().zip(k).map(|(z, v)| z + v * C64::new(h, 0.0)).collect()
}

/// Rejects steps that cannot resolve a close approach under a singular interaction:
/// an exact collision, or a displacement of more than half the closest separation.
fn check_resolution(c: &VortexConfig, spec: &HamiltonianSpec, speed: f64, dt: f64) -> Result<()> {
    let Some(tol) = spec.collision_distance() else {
        return Ok(());
    };
    if let Some((i, j, distance)) = c.min_pair_distance() {
        if distance < tol || speed * dt > 0.5 * distance {
            return Err(Error::Collision { i, j, distance });
        }
    }
    Ok(())
}

/// One step of `method`, followed by renormalization of every representative.
pub fn step(c: &VortexConfig, spec: &HamiltonianSpec, dt: f64, method: Method) -> Result<VortexConfig> {
    step_detail(c, spec, dt, method).map(|r| r.config)
}

pub fn step_detail(c: &VortexConfig, spec: &HamiltonianSpec, dt: f64, method: Method) -> Result<StepReport> {
    let g = c.gammas();
    let z: Vec<Vec3> = c.points().iter().map(|p| *p.rep()).collect();
    let k1 = field(g, &z, spec)?;
    let speed = k1.iter().map(|v| v.norm()).fold(0.0, f64::max);
    check_resolution(c, spec, speed, dt)?;
    let raw = match method {
        Method::Rk4Projected => {
            let k2 = field(g, &axpy(&z, &k1, 0.5 * dt), spec)?;
            let k3 = field(g, &axpy(&z, &k2, 0.5 * dt), spec)?;
            let k4 = field(g, &axpy(&z, &k3, dt), spec)?;
            (0..z.len())
                .map(|j| z[j] + (k1[j] + (k2[j] + k3[j]) * C64::new(2.0, 0.0) + k4[j]) * C64::new(dt / 6.0, 0.0))
                .collect::<Vec<_>>()
        }
        Method::MidpointProjected => {
            let k2 = field(g, &axpy(&z, &k1, 0.5 * dt), spec)?;
            axpy(&z, &k2, dt)
        }
    };
    let renormalization = raw.iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max);
    let points = raw
        .into_iter()
        .map(ProjectivePoint::new)
        .collect::<Result<Vec<_>>>()?;
    let config = c.with_points(points)?;
    if let Some(tol) = spec.collision_distance() {
        if let Some((i, j, distance)) = config.min_pair_distance() {
            if distance < tol {
                return Err(Error::Collision { i, j, distance });
            }
        }
    }
    Ok(StepReport {
        config,
        renormalization,
    })
}

/// Recorded state and observables at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub config: VortexConfig,
    pub energy: f64,
    pub momentum: CoalgebraElement,
    pub weyl: WeylPoint,
    /// `(i, j, d_ij)` for `i < j`.
    pub distances: Vec<(usize, usize, f64)>,
}

impl Sample {
    fn observe(t: f64, config: VortexConfig, spec: &HamiltonianSpec) -> Result<Self> {
        let energy = hamiltonian(&config, spec)?;
        let momentum = momentum_map(&config);
        Ok(Self {
            t,
            weyl: weyl_projection(&momentum),
            distances: config.pair_distances(),
            config,
            energy,
            momentum,
        })
    }
}

/// How an integration ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    Completed,
    /// Aborted before step `step` could be taken; the last sample is the last good state.
    Collision {
        step: usize,
        i: usize,
        j: usize,
        distance: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    /// Max over all steps of `|H - H(0)| / |H(0)|` (absolute when `H(0) = 0`).
    pub max_energy_drift: f64,
    /// Max over all steps of `|J - J(0)|_F`.
    pub max_momentum_drift: f64,
    /// Max over all steps of the renormalization correction.
    pub max_renormalization: f64,
    pub termination: Termination,
}

impl Trajectory {
    pub fn completed(&self) -> bool {
        self.termination == Termination::Completed
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("a trajectory holds at least its initial sample")
    }
}

/// Iterates `step`, recording a sample every `monitor_every` steps and at the end.
/// Drifts are measured at every step. A collision ends the run early with the
/// partial trajectory flagged; a colliding initial state is an error.
pub fn integrate(c: &VortexConfig, hspec: &HamiltonianSpec, ispec: &IntegratorSpec) -> Result<Trajectory> {
    ispec.validate()?;
    let first = Sample::observe(0.0, c.clone(), hspec)?;
    let h0 = first.energy;
    let j0 = first.momentum;
    let scale = if h0 != 0.0 { h0.abs() } else { 1.0 };
    let mut traj = Trajectory {
        samples: alloc::vec![first],
        max_energy_drift: 0.0,
        max_momentum_drift: 0.0,
        max_renormalization: 0.0,
        termination: Termination::Completed,
    };
    let mut current = c.clone();
    for k in 1..=ispec.steps {
        let report = match step_detail(&current, hspec, ispec.dt, ispec.method) {
            Ok(r) => r,
            Err(Error::Collision { i, j, distance }) => {
                let t = (k - 1) as f64 * ispec.dt;
                if traj.last().t != t {
                    traj.samples.push(Sample::observe(t, current, hspec)?);
                }
                traj.termination = Termination::Collision { step: k, i, j, distance };
                return Ok(traj);
            }
            Err(e) => return Err(e),
        };
        current = report.config;
        traj.max_renormalization = traj.max_renormalization.max(report.renormalization);
        let energy = hamiltonian(&current, hspec)?;
        let momentum = momentum_map(&current);
        traj.max_energy_drift = traj.max_energy_drift.max((energy - h0).abs() / scale);
        traj.max_momentum_drift = traj.max_momentum_drift.max((momentum - j0).frobenius_norm());
        if k % ispec.monitor_every == 0 || k == ispec.steps {
            traj.samples.push(Sample::observe(k as f64 * ispec.dt, current.clone(), hspec)?);
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests;
