//! File formats. Every CSV starts with a `# config: <json>` line echoing the request.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use cpv_core::integrate::{Termination, Trajectory};
use cpv_core::su3::WeylPoint;
use serde::Serialize;

use crate::config::{point_to_raw, RawPoint};

/// Opens `path` for writing and emits the config echo line.
fn create_with_echo(path: &Path, echo: &str) -> anyhow::Result<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut f = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    writeln!(f, "# config: {echo}")?;
    Ok(f)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// `t, z{j}_{k}_re, z{j}_{k}_im, ..., H, lambda1..3, d{ij}...` with one-based `j`, `k`.
pub fn trajectory_header(n: usize) -> Vec<String> {
    let mut h = vec!["t".to_string()];
    for j in 1..=n {
        for k in 1..=3 {
            h.push(format!("z{j}_{k}_re"));
            h.push(format!("z{j}_{k}_im"));
        }
    }
    h.push("H".into());
    h.extend((1..=3).map(|k| format!("lambda{k}")));
    for i in 1..=n {
        for j in i + 1..=n {
            h.push(format!("d{i}{j}"));
        }
    }
    h
}

pub fn write_trajectory_csv(path: &Path, echo: &str, traj: &Trajectory) -> anyhow::Result<()> {
    let n = traj.samples[0].config.len();
    let mut w = csv::Writer::from_writer(create_with_echo(path, echo)?);
    w.write_record(trajectory_header(n))?;
    for s in &traj.samples {
        let mut row = vec![s.t];
        for z in s.config.points() {
            row.extend(point_to_raw(z).iter().flatten());
        }
        row.push(s.energy);
        row.extend(s.weyl.lambda());
        row.extend(s.distances.iter().map(|d| d.2));
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationJson {
    Completed,
    /// Indices are one-based.
    Collision { step: usize, i: usize, j: usize, distance: f64 },
}

impl From<Termination> for TerminationJson {
    fn from(t: Termination) -> Self {
        match t {
            Termination::Completed => Self::Completed,
            Termination::Collision { step, i, j, distance } => Self::Collision {
                step,
                i: i + 1,
                j: j + 1,
                distance,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulationSummary {
    pub steps_requested: usize,
    pub samples: usize,
    pub final_time: f64,
    pub max_energy_drift: f64,
    pub max_momentum_drift: f64,
    pub max_renormalization: f64,
    /// Smallest pair distance among recorded samples (absent for one point).
    pub min_distance: Option<f64>,
    pub termination: TerminationJson,
}

impl SimulationSummary {
    pub fn new(traj: &Trajectory, steps_requested: usize) -> Self {
        Self {
            steps_requested,
            samples: traj.samples.len(),
            final_time: traj.last().t,
            max_energy_drift: traj.max_energy_drift,
            max_momentum_drift: traj.max_momentum_drift,
            max_renormalization: traj.max_renormalization,
            min_distance: traj.samples.iter().flat_map(|s| s.distances.iter().map(|d| d.2)).reduce(f64::min),
            termination: traj.termination.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct SampleJson {
    t: f64,
    points: Vec<RawPoint>,
    energy: f64,
    /// Full Hermitian momentum matrix, rows of `[re, im]`.
    momentum: [[[f64; 2]; 3]; 3],
    lambda: [f64; 3],
    /// `[i, j, d_ij]`, one-based.
    distances: Vec<(usize, usize, f64)>,
}

#[derive(Serialize)]
struct TrajectoryJson<'a, C: Serialize> {
    config: &'a C,
    summary: &'a SimulationSummary,
    samples: Vec<SampleJson>,
}

pub fn write_trajectory_json<C: Serialize>(
    path: &Path,
    config: &C,
    summary: &SimulationSummary,
    traj: &Trajectory,
) -> anyhow::Result<()> {
    let samples = traj
        .samples
        .iter()
        .map(|s| {
            let m = s.momentum.matrix();
            SampleJson {
                t: s.t,
                points: s.config.points().iter().map(point_to_raw).collect(),
                energy: s.energy,
                momentum: std::array::from_fn(|r| std::array::from_fn(|c| [m[(r, c)].re, m[(r, c)].im])),
                lambda: s.weyl.lambda(),
                distances: s.distances.iter().map(|&(i, j, d)| (i + 1, j + 1, d)).collect(),
            }
        })
        .collect();
    write_json(path, &TrajectoryJson { config, summary, samples })
}

pub const POLYTOPE_HEADER: [&str; 5] = ["lambda1", "lambda2", "lambda3", "x", "y"];

fn weyl_row(w: &WeylPoint) -> [f64; 5] {
    let [a, b, c] = w.lambda();
    let (x, y) = w.chamber_coords();
    [a, b, c, x, y]
}

pub fn write_polytope_csv(path: &Path, echo: &str, points: &[WeylPoint]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(create_with_echo(path, echo)?);
    w.write_record(POLYTOPE_HEADER)?;
    for p in points {
        w.serialize(weyl_row(p))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_landmarks_csv(path: &Path, echo: &str, landmarks: &[(&str, WeylPoint)]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(create_with_echo(path, echo)?);
    let mut header = vec!["label"];
    header.extend(POLYTOPE_HEADER);
    w.write_record(header)?;
    for (label, p) in landmarks {
        w.serialize((label, weyl_row(p)))?;
    }
    w.flush()?;
    Ok(())
}
