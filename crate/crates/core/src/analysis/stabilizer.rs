//! Isotropy of configurations: geometric type, stabilizer algebra, rank of the
//! momentum derivative and the space of allowed relative-equilibrium velocities.

#[allow(unused_imports)]
use nalgebra::{ComplexField, RealField};
use core::f64::consts::FRAC_PI_2;
use core::fmt;

use alloc::vec::Vec;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;
use crate::projective::{horizontal_project, infinitesimal_action, ProjectivePoint};
use crate::su3::{self, AlgebraBasis, AlgebraElement, CoalgebraElement};
use crate::vortex::{generator, momentum_map, VortexConfig};
use crate::{Vec3, C64};

/// Coincidence, orthogonality and coplanarity threshold of the classifier.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Relative singular-value threshold for numerical ranks and kernels.
pub const RANK_TOL: f64 = 1e-8;

/// Geometric isotropy type of a configuration of two or three points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilizerType {
    TriplePoint,
    DoublePoint,
    DoubleOrthogonal,
    TotallyOrthogonal,
    Coplanar,
    SemiOrthogonal,
    Generic,
    Equal,
    Orthogonal,
    Generic2,
}

impl StabilizerType {
    pub fn name(self) -> &'static str {
        match self {
            Self::TriplePoint => "TriplePoint",
            Self::DoublePoint => "DoublePoint",
            Self::DoubleOrthogonal => "DoubleOrthogonal",
            Self::TotallyOrthogonal => "TotallyOrthogonal",
            Self::Coplanar => "Coplanar",
            Self::SemiOrthogonal => "SemiOrthogonal",
            Self::Generic => "Generic",
            Self::Equal => "Equal",
            Self::Orthogonal => "Orthogonal",
            Self::Generic2 => "Generic2",
        }
    }

    /// Dimension of the stabilizer subgroup: U(2), T^2, U(1) or trivial.
    pub fn stabilizer_dim(self) -> usize {
        match self {
            Self::TriplePoint | Self::Equal => 4,
            Self::DoubleOrthogonal | Self::TotallyOrthogonal | Self::Orthogonal => 2,
            Self::DoublePoint | Self::Coplanar | Self::SemiOrthogonal | Self::Generic2 => 1,
            Self::Generic => 0,
        }
    }

    pub const ALL_TRIPLE: [Self; 7] = [
        Self::TriplePoint,
        Self::DoublePoint,
        Self::DoubleOrthogonal,
        Self::TotallyOrthogonal,
        Self::Coplanar,
        Self::SemiOrthogonal,
        Self::Generic,
    ];
}

impl fmt::Display for StabilizerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_stabilizer(c: &VortexConfig) -> Result<StabilizerType> {
    classify_stabilizer_with(c, CLASSIFY_TOL)
}

/// Classifies by pairwise distances (`d < tol` coincident, `|d - pi/2| < tol`
/// orthogonal) and, for three distinct points, by the smallest singular value
/// of the matrix of representatives. The first matching rule wins:
/// triple point, double+orthogonal, double point, totally orthogonal,
/// semi-orthogonal, coplanar, generic.
pub fn classify_stabilizer_with(c: &VortexConfig, tol: f64) -> Result<StabilizerType> {
    let p = c.points();
    let equal = |i: usize, j: usize| p[i].distance(&p[j]) < tol;
    let orth = |i: usize, j: usize| (p[i].distance(&p[j]) - FRAC_PI_2).abs() < tol;
    match p.len() {
        2 => Ok(if equal(0, 1) {
            StabilizerType::Equal
        } else if orth(0, 1) {
            StabilizerType::Orthogonal
        } else {
            StabilizerType::Generic2
        }),
        3 => {
            const PAIRS: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
            let coincident: Vec<_> = PAIRS.iter().filter(|(i, j, _)| equal(*i, *j)).collect();
            if coincident.len() == 3 {
                return Ok(StabilizerType::TriplePoint);
            }
            if let Some(&&(i, j, l)) = coincident.first() {
                return Ok(if orth(i, l) && orth(j, l) {
                    StabilizerType::DoubleOrthogonal
                } else {
                    StabilizerType::DoublePoint
                });
            }
            if PAIRS.iter().all(|(i, j, _)| orth(*i, *j)) {
                return Ok(StabilizerType::TotallyOrthogonal);
            }
            if PAIRS.iter().any(|(i, j, l)| orth(*l, *i) && orth(*l, *j)) {
                return Ok(StabilizerType::SemiOrthogonal);
            }
            if smallest_singular_value(c) < tol {
                return Ok(StabilizerType::Coplanar);
            }
            Ok(StabilizerType::Generic)
        }
        n => Err(Error::UnsupportedSize {
            got: n,
            supported: "{2, 3}",
        }),
    }
}

/// Smallest singular value of the complex matrix `[Z_1 Z_2 Z_3]`.
fn smallest_singular_value(c: &VortexConfig) -> f64 {
    // real form [[Re, -Im], [Im, Re]] doubles each singular value
    let m = DMatrix::from_fn(6, 6, |r, k| {
        let z = c.points()[k % 3].rep()[r % 3];
        match (r < 3, k < 3) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    linalg::decompose(&m).values.last().copied().unwrap_or(0.0)
}

fn stack(vecs: impl Iterator<Item = Vec3>) -> Vec<f64> {
    let mut out = Vec::new();
    for v in vecs {
        linalg::push_vec3(&mut out, &v);
    }
    out
}

fn unstack(x: &[f64]) -> Vec<Vec3> {
    x.chunks(6)
        .map(|s| Vec3::new(C64::new(s[0], s[1]), C64::new(s[2], s[3]), C64::new(s[4], s[5])))
        .collect()
}

/// Basis of `g_x = {xi : xi_M(c) = 0}`, orthonormal in the trace inner product.
pub fn stabilizer_algebra(c: &VortexConfig) -> Vec<AlgebraElement> {
    let basis = AlgebraBasis::standard();
    let mut cols = Vec::with_capacity(6 * c.len() * 8);
    for xi in &basis.elements {
        cols.extend(stack(c.points().iter().map(|z| infinitesimal_action(xi, z).vec)));
    }
    let a = DMatrix::from_column_slice(6 * c.len(), 8, &cols);
    let d = linalg::decompose(&a);
    let threshold = RANK_TOL * d.values[0];
    d.values
        .iter()
        .zip(&d.right)
        .filter(|(s, _)| **s <= threshold)
        .map(|(_, v)| basis.combine(v.as_slice()))
        .collect()
}

/// Derivative of the momentum map in coordinates: 8 rows (coalgebra basis) by
/// 4N columns (the real orthonormal horizontal basis at each point, in order).
pub fn momentum_jacobian(c: &VortexConfig) -> DMatrix<f64> {
    let n = c.len();
    let mut m = DMatrix::zeros(8, 4 * n);
    for (j, (z, g)) in c.points().iter().zip(c.gammas()).enumerate() {
        let r = z.rep();
        for (k, b) in z.tangent_basis().iter().enumerate() {
            let d = (b * r.adjoint() + r * b.adjoint()) * C64::new(*g, 0.0);
            let coords = CoalgebraElement::raw(d).coords();
            for (row, x) in coords.iter().enumerate() {
                m[(row, 4 * j + k)] = *x;
            }
        }
    }
    m
}

/// Numerical rank of [`momentum_jacobian`] at threshold `1e-8` times its largest singular value.
pub fn momentum_jacobian_rank(c: &VortexConfig) -> usize {
    let d = linalg::decompose(&momentum_jacobian(c));
    let threshold = RANK_TOL * d.values[0];
    d.values.iter().filter(|s| **s > threshold).count()
}

/// Dimension of `R_0 = (g_mu . x)^{G_x}`, the velocities a relative
/// equilibrium at `c` may have modulo its own symmetry.
///
/// Group-fixedness is replaced by annihilation under the stabilizer algebra,
/// which is equivalent because every stabilizer that occurs is connected.
pub fn allowed_velocity_dim(c: &VortexConfig) -> usize {
    let mu = momentum_map(c);
    let g_mu = su3::coadjoint_stabilizer(&mu);
    if g_mu.is_empty() {
        return 0;
    }
    let rows = 6 * c.len();
    let mut cols = Vec::with_capacity(rows * g_mu.len());
    for xi in &g_mu {
        cols.extend(stack(generator(c, xi).vecs.iter().map(|t| t.vec)));
    }
    let a = DMatrix::from_column_slice(rows, g_mu.len(), &cols);
    let d = linalg::decompose(&a);
    let threshold = RANK_TOL * d.values[0].max(1.0);
    let orbit: Vec<Vec<Vec3>> = d
        .values
        .iter()
        .zip(&d.left)
        .filter(|(s, _)| **s > threshold)
        .map(|(_, u)| unstack(u.as_slice()))
        .collect();
    let g_x = stabilizer_algebra(c);
    if orbit.is_empty() || g_x.is_empty() {
        return orbit.len();
    }
    let mut act = Vec::with_capacity(rows * g_x.len() * orbit.len());
    for w in &orbit {
        for eta in &g_x {
            act.extend(stack(
                c.points()
                    .iter()
                    .zip(w)
                    .map(|(z, wj)| linearized_action(eta, z, wj)),
            ));
        }
    }
    let l = DMatrix::from_column_slice(rows * g_x.len(), orbit.len(), &act);
    linalg::decompose(&l).values.iter().filter(|s| **s <= RANK_TOL).count()
}

/// `d/dt e^{-i theta(t)} exp(t eta) w` at `t = 0` for `eta` fixing the line of `z`.
fn linearized_action(eta: &AlgebraElement, z: &ProjectivePoint, w: &Vec3) -> Vec3 {
    let m = eta.matrix();
    let phase = z.rep().dotc(&(m * z.rep()));
    horizontal_project(z, &(m * w - w * phase)).vec
}

#[cfg(test)]
#[path = "stabilizer_tests.rs"]
mod tests;
