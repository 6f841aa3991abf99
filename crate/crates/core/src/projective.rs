//! Points of CP2 as unit representatives in C^3, with Fubini-Study distance and
//! the SU(3) action. Tangent vectors are horizontal lifts: orthogonal to the
//! representative, so they carry neither radial nor phase components.

use core::f64::consts::FRAC_PI_2;

use nalgebra::ComplexField;
#[allow(unused_imports)]
use nalgebra::RealField;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::su3::{self, AlgebraElement};
use crate::{Mat3, Vec3, C64};

/// Tolerance for phase-insensitive point equality and orthogonality.
pub const POINT_TOL: f64 = 1e-9;

/// Tolerance on `|<Z, v>|` for a vector to count as horizontal.
pub const HORIZONTAL_TOL: f64 = 1e-10;

/// Tolerance on special unitarity accepted by [`act`].
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint {
    rep: Vec3,
}

impl ProjectivePoint {
    /// Normalizes `v`; rejects the zero vector.
    pub fn new(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            rep: v.unscale(n),
        })
    }

    pub fn from_real(v: [f64; 3]) -> Result<Self> {
        Self::new(Vec3::new(
            C64::new(v[0], 0.0),
            C64::new(v[1], 0.0),
            C64::new(v[2], 0.0),
        ))
    }

    /// Coordinate point `e_k` (zero-based `k`).
    pub fn basis(k: usize) -> Self {
        let mut rep = Vec3::zeros();
        rep[k] = C64::new(1.0, 0.0);
        Self { rep }
    }

    pub fn rep(&self) -> &Vec3 {
        &self.rep
    }

    /// Same point with the first nonzero component made real-positive.
    pub fn canonical(&self) -> Self {
        let lead = self
            .rep
            .iter()
            .find(|z| z.modulus() > 1e-12)
            .copied()
            .unwrap_or(C64::new(1.0, 0.0));
        let phase = lead.conj() / C64::new(lead.modulus(), 0.0);
        Self {
            rep: self.rep * phase,
        }
    }

    /// Hermitian product `rep^dagger other.rep`.
    pub fn overlap(&self, other: &Self) -> C64 {
        self.rep.dotc(&other.rep)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        distance(self, other)
    }

    pub fn coincides(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) < tol
    }

    pub fn is_orthogonal(&self, other: &Self, tol: f64) -> bool {
        (self.distance(other) - FRAC_PI_2).abs() < tol
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        random_point(rng)
    }

    /// Real-orthonormal basis (for `Re u^dagger v`) of the horizontal space at this point.
    pub fn tangent_basis(&self) -> [Vec3; 4] {
        // Gram-Schmidt against the coordinate axes best aligned with the complement.
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| self.rep[a].modulus().total_cmp(&self.rep[b].modulus()));
        let mut frame: [Vec3; 2] = [Vec3::zeros(); 2];
        let mut found = 0;
        for &k in &order {
            if found == 2 {
                break;
            }
            let mut v = Vec3::zeros();
            v[k] = C64::new(1.0, 0.0);
            v -= self.rep * self.rep.dotc(&v);
            for f in frame.iter().take(found) {
                v -= f * f.dotc(&v);
            }
            let n = v.norm();
            if n > 1e-6 {
                frame[found] = v.unscale(n);
                found += 1;
            }
        }
        let i = C64::new(0.0, 1.0);
        [frame[0], frame[0] * i, frame[1], frame[1] * i]
    }

    /// `normalize(rep + v)`; a retraction from the horizontal space back to CP2.
    pub fn retract(&self, v: &Vec3) -> Self {
        Self::new(self.rep + v).unwrap_or(*self)
    }
}

/// `make_point`: the unit representative of `v`.
pub fn make_point(v: Vec3) -> Result<ProjectivePoint> {
    ProjectivePoint::new(v)
}

/// Fubini-Study distance `arccos |Z1^dagger Z2|` in `[0, pi/2]`.
///
/// Evaluated as `atan2(|Z2 - Z1 <Z1,Z2>|, |<Z1,Z2>|)`, which agrees with the
/// arccos form but keeps full precision near 0 and near pi/2.
pub fn distance(z1: &ProjectivePoint, z2: &ProjectivePoint) -> f64 {
    let s = z1.overlap(z2);
    let perp = (z2.rep - z1.rep * s).norm();
    perp.atan2(s.modulus()).clamp(0.0, FRAC_PI_2)
}

/// A horizontal tangent vector at `base`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub base: ProjectivePoint,
    pub vec: Vec3,
}

impl TangentVector {
    pub fn new(base: ProjectivePoint, vec: Vec3) -> Result<Self> {
        let overlap = base.rep.dotc(&vec).modulus();
        if overlap > HORIZONTAL_TOL * vec.norm().max(1.0) {
            return Err(Error::NotHorizontal { overlap });
        }
        Ok(Self { base, vec })
    }

    pub fn zero(base: ProjectivePoint) -> Self {
        Self {
            base,
            vec: Vec3::zeros(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.vec.norm()
    }
}

/// Removes the radial and phase components: `v - Z (Z^dagger v)`.
pub fn horizontal_project(z: &ProjectivePoint, v: &Vec3) -> TangentVector {
    TangentVector {
        base: *z,
        vec: v - z.rep * z.rep.dotc(v),
    }
}

/// `g . Z` for special unitary `g`.
pub fn act(g: &Mat3, z: &ProjectivePoint) -> Result<ProjectivePoint> {
    let deviation = su3::special_unitary_deviation(g);
    if deviation > UNITARY_TOL {
        return Err(Error::NotSpecialUnitary { deviation });
    }
    Ok(act_unchecked(g, z))
}

pub(crate) fn act_unchecked(g: &Mat3, z: &ProjectivePoint) -> ProjectivePoint {
    ProjectivePoint::new(g * z.rep).expect("unitary image of a unit vector")
}

/// Generator `xi_CP2(Z)` in the horizontal chart.
pub fn infinitesimal_action(xi: &AlgebraElement, z: &ProjectivePoint) -> TangentVector {
    horizontal_project(z, &(xi.matrix() * z.rep))
}

/// Fubini-Study uniform point: a normalized complex Gaussian vector.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R) -> ProjectivePoint {
    loop {
        let mut g = || -> f64 { StandardNormal.sample(rng) };
        let v = Vec3::new(C64::new(g(), g()), C64::new(g(), g()), C64::new(g(), g()));
        if let Ok(p) = ProjectivePoint::new(v) {
            return p;
        }
    }
}
