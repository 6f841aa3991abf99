//! Distinguished configurations: symmetric relative-equilibrium families,
//! named presets, and canonical representatives of each isotropy type and of
//! each row of the allowed-velocity tables.

#[allow(unused_imports)]
use nalgebra::{ComplexField, RealField};
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use super::probe::{minimize, DescentOptions};
use super::stabilizer::{stabilizer_algebra, StabilizerType};
use crate::error::{Error, Result};
use crate::linalg::cis;
use crate::projective::{act, ProjectivePoint};
use crate::su3::{random_special_unitary, weyl_projection, WeylPoint};
use crate::vortex::{momentum_map, VortexConfig};
use crate::{Mat3, Vec3, C64};

/// `D_1 = diag(1, w, w^2)` with `w = e^{2 pi i / 3}`.
pub fn d1() -> Mat3 {
    Mat3::from_diagonal(&Vec3::new(cis(0.0), cis(2.0 * PI / 3.0), cis(-2.0 * PI / 3.0)))
}

/// `D_2 = diag(e^{2 pi i/9}, e^{2 pi i/9}, e^{-4 pi i/9})`.
pub fn d2() -> Mat3 {
    Mat3::from_diagonal(&Vec3::new(cis(2.0 * PI / 9.0), cis(2.0 * PI / 9.0), cis(-4.0 * PI / 9.0)))
}

/// `(m1, D_j m1, D_j^2 m1)` with all strengths `gamma`; fixed by the cyclic
/// symmetry that permutes the points while rotating by `D_j`.
pub fn symmetric_family_config(j: u8, m1: &ProjectivePoint, gamma: f64) -> Result<VortexConfig> {
    let d = match j {
        1 => d1(),
        2 => d2(),
        _ => return Err(Error::UnsupportedSize { got: j as usize, supported: "{1, 2}" }),
    };
    let m2 = act(&d, m1)?;
    let m3 = act(&d, &m2)?;
    VortexConfig::new(vec![*m1, m2, m3], vec![gamma; 3])
}

/// Random semi-orthogonal triple: `Z_3` orthogonal to `Z_1` and `Z_2`, in a random SU(3) frame.
pub fn random_semi_orthogonal<R: Rng + ?Sized>(gammas: &[f64], rng: &mut R) -> Result<VortexConfig> {
    let mut plane = || loop {
        let v = Vec3::new(
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            C64::new(0.0, 0.0),
        );
        if let Ok(p) = ProjectivePoint::new(v) {
            return p;
        }
    };
    let (z1, z2) = (plane(), plane());
    let g = random_special_unitary(rng);
    let pts = [z1, z2, ProjectivePoint::basis(2)].iter().map(|z| act(&g, z)).collect::<Result<Vec<_>>>()?;
    VortexConfig::new(pts, gammas.to_vec())
}

/// Point of the line `P(span(e1, e2))` with Bloch vector `n` (a nonzero 3-vector):
/// `[cos(t/2) : e^{i phi} sin(t/2) : 0]` in polar angles of `n`.
pub fn bloch_point(n: [f64; 3]) -> Result<ProjectivePoint> {
    let r = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if !(r > 0.0) {
        return Err(Error::ZeroVector);
    }
    let theta = (n[2] / r).clamp(-1.0, 1.0).acos();
    let phi = n[1].atan2(n[0]);
    ProjectivePoint::new(Vec3::new(
        C64::new((0.5 * theta).cos(), 0.0),
        cis(phi) * (0.5 * theta).sin(),
        C64::new(0.0, 0.0),
    ))
}

/// Named starting configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// All points at `e1`.
    Triple,
    /// `e1, e2, e3` (the first N of them).
    TotallyOrthogonal,
    /// `e1, (e1 + e2)/sqrt 2, e3`.
    SemiOrthogonal,
    /// `e1, e2, (e1 + e2)/sqrt 2`.
    Coplanar,
    /// Independent uniform points from a ChaCha8 stream with this seed.
    Random(u64),
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Self::Triple => "triple",
            Self::TotallyOrthogonal => "totally_orthogonal",
            Self::SemiOrthogonal => "semi_orthogonal",
            Self::Coplanar => "coplanar",
            Self::Random(_) => "random",
        }
    }

    /// Points for `n` vortices; the structured presets exist for `n <= 3`.
    pub fn points(self, n: usize) -> Result<Vec<ProjectivePoint>> {
        let e = ProjectivePoint::basis;
        let diag = ProjectivePoint::from_real([1.0, 1.0, 0.0])?;
        let pts = match self {
            Self::Random(seed) => {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                return Ok((0..n).map(|_| ProjectivePoint::random(&mut rng)).collect());
            }
            Self::Triple => vec![e(0); n],
            Self::TotallyOrthogonal => vec![e(0), e(1), e(2)],
            Self::SemiOrthogonal => vec![e(0), diag, e(2)],
            Self::Coplanar => vec![e(0), e(1), diag],
        };
        if n > 3 && self != Self::Triple {
            return Err(Error::UnsupportedSize { got: n, supported: "{1, 2, 3}" });
        }
        Ok(pts.into_iter().take(n).collect())
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    /// Accepts the names above; `random` takes seed 0, `random:<seed>` a given seed.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triple" => Ok(Self::Triple),
            "totally_orthogonal" => Ok(Self::TotallyOrthogonal),
            "semi_orthogonal" => Ok(Self::SemiOrthogonal),
            "coplanar" => Ok(Self::Coplanar),
            "random" => Ok(Self::Random(0)),
            _ => s
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(Self::Random)
                .ok_or(Error::UnknownPreset),
        }
    }
}

/// A fixed representative of each isotropy type of three points. Generic
/// points use fixed non-special coordinates.
pub fn canonical_representative(t: StabilizerType, gammas: &[f64]) -> Result<VortexConfig> {
    let e = ProjectivePoint::basis;
    let p = |v: [(f64, f64); 3]| {
        ProjectivePoint::new(Vec3::new(C64::new(v[0].0, v[0].1), C64::new(v[1].0, v[1].1), C64::new(v[2].0, v[2].1)))
    };
    let w = p([(0.6, 0.1), (-0.3, 0.5), (0.2, -0.4)])?;
    let u = p([(0.1, -0.7), (0.4, 0.2), (-0.5, 0.3)])?;
    let v = p([(-0.2, 0.3), (0.8, -0.1), (0.3, 0.6)])?;
    let pts = match t {
        StabilizerType::TriplePoint => vec![w, w, w],
        StabilizerType::DoublePoint => vec![w, w, u],
        StabilizerType::DoubleOrthogonal => vec![e(0), e(0), e(1)],
        StabilizerType::TotallyOrthogonal => vec![e(0), e(1), e(2)],
        StabilizerType::Coplanar => coplanar_distinct()?,
        StabilizerType::SemiOrthogonal => vec![e(0), ProjectivePoint::from_real([1.0, 1.0, 0.0])?, e(2)],
        StabilizerType::Generic => vec![w, u, v],
        StabilizerType::Equal => vec![w, w],
        StabilizerType::Orthogonal => vec![e(0), e(1)],
        StabilizerType::Generic2 => vec![w, u],
    };
    VortexConfig::new(pts, gammas.to_vec())
}

/// Weyl projection of the momentum of the generic representative: an interior
/// point of the polytope off the walls, and a regular value for generic strengths.
pub fn interior_target(gammas: &[f64]) -> Result<WeylPoint> {
    let c = canonical_representative(StabilizerType::Generic, gammas)?;
    Ok(weyl_projection(&momentum_map(&c)))
}

/// Three distinct, pairwise non-orthogonal points of the line `P(span(e1, e2))`.
fn coplanar_distinct() -> Result<Vec<ProjectivePoint>> {
    Ok(vec![
        bloch_point([0.0, 0.0, 1.0])?,
        bloch_point([0.8, 0.1, 0.3])?,
        bloch_point([-0.2, 0.9, -0.1])?,
    ])
}

/// Rows of the allowed-velocity table for two vortices, with the expected `dim R_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table1Row {
    Equal,
    Orthogonal,
    Generic,
}

impl Table1Row {
    pub const ALL: [Self; 3] = [Self::Equal, Self::Orthogonal, Self::Generic];

    pub fn expected(self) -> usize {
        match self {
            Self::Equal | Self::Orthogonal => 0,
            Self::Generic => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Equal => "equal",
            Self::Orthogonal => "orthogonal",
            Self::Generic => "generic",
        }
    }

    pub fn representative(self, gammas: [f64; 2]) -> Result<VortexConfig> {
        let e = ProjectivePoint::basis;
        let second = match self {
            Self::Equal => e(0),
            Self::Orthogonal => e(1),
            Self::Generic => ProjectivePoint::from_real([0.7f64.cos(), 0.7f64.sin(), 0.0])?,
        };
        VortexConfig::new(vec![e(0), second], gammas.to_vec())
    }
}

/// Rows of the allowed-velocity table for three vortices with generic strengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table2Row {
    WallTriplePoint,
    WallOtherVertex,
    WallGeneric,
    DoublePoint,
    DoubleOrthogonal,
    DistinctCoplanar,
    TotallyOrthogonal,
    SemiOrthogonal,
    Generic,
}

/// Strengths used for the table: no equalities, no opposite pairs, and no
/// strength equal to the sum of the other two.
pub const GENERIC_GAMMAS: [f64; 3] = [2.0, 3.0, 4.0];

impl Table2Row {
    pub const ALL: [Self; 9] = [
        Self::WallTriplePoint,
        Self::WallOtherVertex,
        Self::WallGeneric,
        Self::DoublePoint,
        Self::DoubleOrthogonal,
        Self::DistinctCoplanar,
        Self::TotallyOrthogonal,
        Self::SemiOrthogonal,
        Self::Generic,
    ];

    pub fn expected(self) -> usize {
        match self {
            Self::WallTriplePoint => 0,
            Self::WallOtherVertex => 3,
            Self::WallGeneric => 4,
            Self::DoublePoint => 1,
            Self::DoubleOrthogonal => 0,
            Self::DistinctCoplanar => 1,
            Self::TotallyOrthogonal => 0,
            Self::SemiOrthogonal => 1,
            Self::Generic => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::WallTriplePoint => "wall: triple point",
            Self::WallOtherVertex => "wall: other vertices",
            Self::WallGeneric => "wall: generic",
            Self::DoublePoint => "double point",
            Self::DoubleOrthogonal => "double+orthogonal",
            Self::DistinctCoplanar => "distinct coplanar",
            Self::TotallyOrthogonal => "totally orthogonal",
            Self::SemiOrthogonal => "semi-orthogonal",
            Self::Generic => "generic",
        }
    }

    /// A configuration of this row for strengths `g`. The wall rows other than
    /// the triple point are constructed for `g` and may fail for special `g`.
    pub fn representative(self, g: [f64; 3]) -> Result<VortexConfig> {
        let of = |t| canonical_representative(t, &g);
        match self {
            Self::WallTriplePoint => {
                VortexConfig::new(vec![ProjectivePoint::basis(0); 3], g.to_vec())
            }
            Self::WallOtherVertex => balanced_coplanar(g),
            Self::WallGeneric => generic_on_wall(g),
            Self::DoublePoint => of(StabilizerType::DoublePoint),
            Self::DoubleOrthogonal => of(StabilizerType::DoubleOrthogonal),
            Self::DistinctCoplanar => of(StabilizerType::Coplanar),
            Self::TotallyOrthogonal => of(StabilizerType::TotallyOrthogonal),
            Self::SemiOrthogonal => of(StabilizerType::SemiOrthogonal),
            Self::Generic => of(StabilizerType::Generic),
        }
    }
}

/// Three points of `P(span(e1, e2))` whose Bloch vectors satisfy
/// `sum_j Gamma_j n_j = 0`. The momentum then acts as a multiple of the identity
/// on that plane (a wall value), while the stabilizer is only the U(1) acting on `e3`.
pub fn balanced_coplanar(g: [f64; 3]) -> Result<VortexConfig> {
    // |g1 n1 + g2 n2| = |g3| fixes the angle between n1 and n2
    let cos = (g[2] * g[2] - g[0] * g[0] - g[1] * g[1]) / (2.0 * g[0] * g[1]);
    if !(cos.abs() < 1.0) {
        return Err(Error::InvalidTable("strengths admit no balanced coplanar triple"));
    }
    let sin = (1.0 - cos * cos).sqrt();
    let n1 = [0.0, 0.0, 1.0];
    let n2 = [sin, 0.0, cos];
    let n3 = [-(g[1] * n2[0]) / g[2], 0.0, -(g[0] + g[1] * n2[2]) / g[2]];
    VortexConfig::new(vec![bloch_point(n1)?, bloch_point(n2)?, bloch_point(n3)?], g.to_vec())
}

/// A configuration with trivial stabilizer whose momentum has a repeated
/// eigenvalue, found by descending the squared smallest eigenvalue gap from a
/// fixed generic start.
pub fn generic_on_wall(g: [f64; 3]) -> Result<VortexConfig> {
    let start = canonical_representative(StabilizerType::Generic, &g)?;
    let gap2 = |c: &VortexConfig| {
        let l = weyl_projection(&momentum_map(c)).lambda();
        let d = (l[0] - l[1]).min(l[1] - l[2]);
        d * d
    };
    let opts = DescentOptions {
        tol: 1e-22,
        polish_tol: Some(1e-30),
        ..DescentOptions::default()
    };
    let out = minimize(&start, gap2, &opts);
    if !out.converged || !stabilizer_algebra(&out.config).is_empty() {
        return Err(Error::InvalidTable("descent to the wall did not reach a free configuration"));
    }
    Ok(out.config)
}

#[cfg(test)]
#[path = "families_tests.rs"]
mod tests;
