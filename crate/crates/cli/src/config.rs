//! JSON run configurations. Complex numbers are `[re, im]` pairs.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use cpv_core::analysis::Preset;
use cpv_core::integrate::{IntegratorSpec, Method};
use cpv_core::{HamiltonianSpec, InteractionTable, ProjectivePoint, Vec3, VortexConfig, C64};
use serde::{Deserialize, Serialize};

/// A point given by a (not necessarily normalized) representative.
pub type RawPoint = [[f64; 2]; 3];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointsSpec {
    /// `triple`, `totally_orthogonal`, `semi_orthogonal`, `coplanar`, `random` or `random:<seed>`.
    Preset(String),
    Explicit(Vec<RawPoint>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianConfig {
    LogSin,
    Cosine,
    /// Samples of `h0` on a uniform grid over `[d_min, pi/2]`.
    Table { d_min: f64, values: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodName {
    Rk4Projected,
    MidpointProjected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorConfig {
    pub method: MethodName,
    pub dt: f64,
    pub steps: usize,
    pub monitor_every: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        let d = IntegratorSpec::default();
        Self {
            method: MethodName::Rk4Projected,
            dt: d.dt,
            steps: d.steps,
            monitor_every: d.monitor_every,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub gammas: Vec<f64>,
    pub points: PointsSpec,
    #[serde(default = "default_hamiltonian")]
    pub hamiltonian: HamiltonianConfig,
    #[serde(default)]
    pub integrator: IntegratorConfig,
}

fn default_hamiltonian() -> HamiltonianConfig {
    HamiltonianConfig::LogSin
}

impl RunConfig {
    /// Parses JSON text; errors name the offending field path and position.
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        match serde_path_to_error::deserialize(de) {
            Ok(c) => Ok(c),
            Err(e) => {
                let path = e.path().to_string();
                let inner = e.into_inner();
                bail!("at field `{path}` (line {}, column {}): {inner}", inner.line(), inner.column())
            }
        }
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configs always serialize")
    }

    pub fn vortex_config(&self) -> anyhow::Result<VortexConfig> {
        let points = match &self.points {
            PointsSpec::Preset(name) => {
                let preset: Preset = name.parse().with_context(|| format!("points: unknown preset `{name}`"))?;
                preset.points(self.gammas.len()).context("points")?
            }
            PointsSpec::Explicit(raw) => raw
                .iter()
                .enumerate()
                .map(|(j, p)| point_from_raw(p).with_context(|| format!("points[{j}]")))
                .collect::<anyhow::Result<_>>()?,
        };
        VortexConfig::new(points, self.gammas.clone()).context("configuration")
    }

    pub fn hamiltonian_spec(&self) -> anyhow::Result<HamiltonianSpec> {
        Ok(match &self.hamiltonian {
            HamiltonianConfig::LogSin => HamiltonianSpec::LogSin,
            HamiltonianConfig::Cosine => HamiltonianSpec::Cosine,
            HamiltonianConfig::Table { d_min, values } => {
                HamiltonianSpec::Table(InteractionTable::new(*d_min, values.clone()).context("hamiltonian.table")?)
            }
        })
    }

    pub fn integrator_spec(&self) -> anyhow::Result<IntegratorSpec> {
        let i = &self.integrator;
        let method = match i.method {
            MethodName::Rk4Projected => Method::Rk4Projected,
            MethodName::MidpointProjected => Method::MidpointProjected,
        };
        IntegratorSpec::new(method, i.dt, i.steps, i.monitor_every).context("integrator")
    }
}

pub fn point_from_raw(p: &RawPoint) -> anyhow::Result<ProjectivePoint> {
    let v = Vec3::new(C64::new(p[0][0], p[0][1]), C64::new(p[1][0], p[1][1]), C64::new(p[2][0], p[2][1]));
    Ok(ProjectivePoint::new(v)?)
}

/// `[re, im]` pairs of the phase-normalized representative.
pub fn point_to_raw(z: &ProjectivePoint) -> RawPoint {
    let r = z.canonical();
    let r = r.rep();
    [[r[0].re, r[0].im], [r[1].re, r[1].im], [r[2].re, r[2].im]]
}

/// Parses `g1,g2,...`.
pub fn parse_gammas(s: &str) -> anyhow::Result<Vec<f64>> {
    let g: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().with_context(|| format!("bad strength `{x}`")))
        .collect::<anyhow::Result<_>>()?;
    if let Some(i) = g.iter().position(|x| *x == 0.0 || !x.is_finite()) {
        bail!("strength {} must be finite and nonzero", i + 1);
    }
    Ok(g)
}
