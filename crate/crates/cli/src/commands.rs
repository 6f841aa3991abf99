//! Command implementations. Each returns a JSON report for stdout and an exit code.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::anyhow;
use cpv_core::analysis::{
    allowed_velocity_dim, classify_stabilizer, interior_target, momentum_jacobian_rank, polytope_landmarks,
    predict_reduced_space, stabilizer_algebra, ChamberHull, MomentumLocation, ReducedSpacePrediction,
};
use cpv_core::integrate::integrate;
use cpv_core::su3::{weyl_projection, AlgebraBasis, WeylPoint, DEGENERACY_TOL};
use cpv_core::vortex::{momentum_map, re_residual};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{input_error, Classify, CliError};
use crate::output::{
    write_json, write_landmarks_csv, write_polytope_csv, write_trajectory_csv, write_trajectory_json, SimulationSummary,
};
use crate::probe::{parallel_fiber_probe, parallel_sample_polytope};
use crate::verify::Suite;

/// Exit code 0: success.
pub const EXIT_OK: u8 = 0;
/// Exit code 1: a verification check failed.
pub const EXIT_VERIFY_FAILED: u8 = 1;
/// Exit code 3: the run stopped early (e.g. a collision); partial results were written.
pub const EXIT_RUNTIME: u8 = 3;

#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub code: u8,
}

fn weyl_json(w: &WeylPoint) -> Value {
    let (x, y) = w.chamber_coords();
    json!({ "lambda": w.lambda(), "chamber": [x, y] })
}

fn prediction_json(p: &ReducedSpacePrediction) -> Value {
    json!({ "kind": p.kind.to_string(), "basis": p.basis })
}

/// Integrates the configured run, writing `trajectory.csv` and `trajectory.json` to `out`.
/// A collision still writes the partial trajectory and yields exit code 3.
pub fn simulate(config: &Path, out: &Path) -> Result<Outcome, CliError> {
    let run = RunConfig::load(config).input()?;
    let c = run.vortex_config().input()?;
    let h = run.hamiltonian_spec().input()?;
    let ispec = run.integrator_spec().input()?;
    let traj = integrate(&c, &h, &ispec).runtime()?;
    let summary = SimulationSummary::new(&traj, ispec.steps);
    write_trajectory_csv(&out.join("trajectory.csv"), &run.to_json(), &traj).runtime()?;
    write_trajectory_json(&out.join("trajectory.json"), &run, &summary, &traj).runtime()?;
    let code = if traj.completed() { EXIT_OK } else { EXIT_RUNTIME };
    Ok(Outcome {
        report: json!({ "command": "simulate", "summary": summary, "output": out }),
        code,
    })
}

/// Scatter of sampled Weyl points plus landmarks, hull and reduced-space predictions.
pub fn polytope(gammas: &[f64], samples: usize, seed: u64, out: &Path) -> Result<Outcome, CliError> {
    if samples == 0 {
        return Err(input_error("--samples must be at least 1"));
    }
    let echo = json!({ "command": "polytope", "gammas": gammas, "samples": samples, "seed": seed }).to_string();
    let points = parallel_sample_polytope(gammas, samples, seed).input()?;
    write_polytope_csv(&out.join("polytope.csv"), &echo, &points).runtime()?;
    let mut report = json!({ "command": "polytope", "gammas": gammas, "samples": samples, "seed": seed });
    let mut hull_points = points.clone();
    if gammas.len() == 3 {
        let l = polytope_landmarks(gammas).input()?;
        let labelled = l.labelled();
        write_landmarks_csv(&out.join("landmarks.csv"), &echo, &labelled).runtime()?;
        hull_points.extend(labelled.iter().map(|(_, w)| *w));
        let mut landmarks = serde_json::Map::new();
        let mut predictions = serde_json::Map::new();
        for (k, (label, w)) in labelled.iter().enumerate() {
            landmarks.insert(label.to_string(), weyl_json(w));
            let at = match k {
                0 => MomentumLocation::A,
                1 => MomentumLocation::B,
                _ => MomentumLocation::C(k - 1),
            };
            predictions.insert(label.to_string(), prediction_json(&predict_reduced_space(gammas, at).input()?));
        }
        report["landmarks"] = landmarks.into();
        report["reduced_spaces"] = predictions.into();
    }
    let hull = ChamberHull::from_weyl(&hull_points);
    report["hull"] = json!({ "vertices": hull.vertices, "area": hull.area() });
    write_json(&out.join("polytope.json"), &report).runtime()?;
    report["output"] = json!(out);
    Ok(Outcome { report, code: EXIT_OK })
}

/// Runs one suite (or all with `None`); exit code 1 if any check fails.
pub fn verify(suite: Option<Suite>, out: Option<&Path>) -> Result<Outcome, CliError> {
    let suites: Vec<Suite> = suite.map_or(Suite::ALL.to_vec(), |s| vec![s]);
    let mut all = Vec::new();
    let mut passed = true;
    for s in suites {
        let criteria = s.run();
        passed &= criteria.iter().all(|c| c.passed);
        all.push(json!({ "suite": s.name(), "criteria": criteria }));
    }
    let report = json!({ "command": "verify", "passed": passed, "suites": all });
    if let Some(dir) = out {
        let name = suite.map_or("all", |s| s.name());
        write_json(&dir.join(format!("verify_{name}.json")), &report).runtime()?;
    }
    Ok(Outcome {
        report,
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

/// Isotropy type, momentum, allowed velocities and relative-equilibrium residual.
pub fn classify(config: &Path) -> Result<Outcome, CliError> {
    let run = RunConfig::load(config).input()?;
    let c = run.vortex_config().input()?;
    let h = run.hamiltonian_spec().input()?;
    let kind = classify_stabilizer(&c).input()?;
    let weyl = weyl_projection(&momentum_map(&c));
    let residual = match re_residual(&c, &h, false) {
        Ok(r) => json!({
            "residual": r.residual,
            "velocity_norm": r.velocity_norm,
            "xi": AlgebraBasis::standard().coords(&r.xi),
        }),
        // the interaction is undefined at coincident points
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    let report = json!({
        "command": "classify",
        "config": run,
        "stabilizer_type": kind.name(),
        "stabilizer_dim": stabilizer_algebra(&c).len(),
        "momentum_jacobian_rank": momentum_jacobian_rank(&c),
        "weyl": weyl_json(&weyl),
        "on_wall": weyl.on_wall(DEGENERACY_TOL),
        "allowed_velocity_dim": allowed_velocity_dim(&c),
        "hamiltonian": h.name(),
        "re_residual": residual,
    });
    Ok(Outcome { report, code: EXIT_OK })
}

/// Target of `cpv probe`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeTarget {
    Interior,
    A,
    B,
    C(usize),
}

impl std::str::FromStr for ProbeTarget {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "interior" => Ok(Self::Interior),
            "a" => Ok(Self::A),
            "b" => Ok(Self::B),
            "c1" => Ok(Self::C(1)),
            "c2" => Ok(Self::C(2)),
            "c3" => Ok(Self::C(3)),
            _ => Err(anyhow!("target must be one of interior, a, b, c1, c2, c3")),
        }
    }
}

#[derive(Serialize)]
struct ClusterJson {
    count: usize,
    distances: [f64; 3],
    phase: Option<f64>,
}

/// Multi-start fiber probe at a landmark or at the interior reference value.
pub fn probe(gammas: &[f64], target: ProbeTarget, starts: usize, seed: u64, out: Option<&Path>) -> Result<Outcome, CliError> {
    let l = polytope_landmarks(gammas).input()?;
    let (mu, at) = match target {
        ProbeTarget::Interior => (interior_target(gammas).input()?, MomentumLocation::InteriorRegular),
        ProbeTarget::A => (l.a, MomentumLocation::A),
        ProbeTarget::B => (l.b, MomentumLocation::B),
        ProbeTarget::C(k) => (l.c_k(k), MomentumLocation::C(k)),
    };
    let r = parallel_fiber_probe(gammas, &mu, starts, seed, 0).input()?;
    let mut dims = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for p in &r.converged {
        *dims.entry(p.reduced_dim).or_insert(0usize) += 1;
        let name = p.class.map_or("unclassified", |c| c.name());
        *classes.entry(name).or_insert(0usize) += 1;
    }
    let clusters: Vec<ClusterJson> = r
        .clusters
        .iter()
        .map(|c| ClusterJson {
            count: c.count,
            distances: c.invariants.distances,
            phase: c.invariants.phase,
        })
        .collect();
    let report = json!({
        "command": "probe",
        "gammas": gammas,
        "seed": seed,
        "target": weyl_json(&mu),
        "degenerate_target": r.degenerate_target,
        "starts": r.starts,
        "converged": r.converged.len(),
        "failed": r.failures.len(),
        "reduced_dim_counts": dims,
        "class_counts": classes,
        "orbit_clusters": clusters,
        "prediction": prediction_json(&predict_reduced_space(gammas, at).input()?),
    });
    if let Some(dir) = out {
        write_json(&dir.join("probe.json"), &report).runtime()?;
    }
    Ok(Outcome { report, code: EXIT_OK })
}
