//! Generalized point vortices on CP2: the weighted symplectic form, the
//! momentum map, pairwise invariant Hamiltonians and their vector fields.

mod interaction;

pub use interaction::{HamiltonianSpec, InteractionTable, COLLISION_TOL};

use alloc::vec::Vec;
use nalgebra::{ComplexField, DMatrix, DVector};
#[allow(unused_imports)]
use nalgebra::RealField;

use crate::error::{Error, Result};
use crate::linalg;
use crate::projective::{self, horizontal_project, ProjectivePoint, TangentVector, POINT_TOL};
use crate::su3::{self, AlgebraBasis, AlgebraElement, CoalgebraElement};
use crate::{Mat3, Vec3, C64};

/// Ordered points of CP2 with nonzero strengths.
#[derive(Debug, Clone, PartialEq)]
pub struct VortexConfig {
    points: Vec<ProjectivePoint>,
    gammas: Vec<f64>,
}

impl VortexConfig {
    pub fn new(points: Vec<ProjectivePoint>, gammas: Vec<f64>) -> Result<Self> {
        if points.len() != gammas.len() {
            return Err(Error::LengthMismatch {
                points: points.len(),
                gammas: gammas.len(),
            });
        }
        if points.is_empty() {
            return Err(Error::EmptyConfig);
        }
        if let Some(index) = gammas.iter().position(|g| *g == 0.0 || !g.is_finite()) {
            return Err(Error::ZeroStrength { index });
        }
        Ok(Self { points, gammas })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// Same strengths, new points.
    pub fn with_points(&self, points: Vec<ProjectivePoint>) -> Result<Self> {
        Self::new(points, self.gammas.clone())
    }

    /// Diagonal action `g . (Z_1, ..., Z_N)`.
    pub fn act(&self, g: &Mat3) -> Result<Self> {
        let points = self
            .points
            .iter()
            .map(|z| projective::act(g, z))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            points,
            gammas: self.gammas.clone(),
        })
    }

    /// Reorders (point, strength) pairs: slot `k` of the result is slot `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            points: perm.iter().map(|&k| self.points[k]).collect(),
            gammas: perm.iter().map(|&k| self.gammas[k]).collect(),
        }
    }

    /// Pairwise distances `(i, j, d_ij)` for `i < j` in lexicographic order.
    pub fn pair_distances(&self) -> Vec<(usize, usize, f64)> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j, self.points[i].distance(&self.points[j])));
            }
        }
        out
    }

    pub fn min_pair_distance(&self) -> Option<(usize, usize, f64)> {
        self.pair_distances()
            .into_iter()
            .min_by(|a, b| a.2.total_cmp(&b.2))
    }
}

/// A tangent vector to the product, one horizontal vector per factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigTangent {
    pub vecs: Vec<TangentVector>,
}

impl ConfigTangent {
    /// Validates horizontality of each `raw[j]` at `c.points[j]`.
    pub fn new(c: &VortexConfig, raw: Vec<Vec3>) -> Result<Self> {
        if raw.len() != c.len() {
            return Err(Error::LengthMismatch {
                points: c.len(),
                gammas: raw.len(),
            });
        }
        let vecs = c
            .points
            .iter()
            .zip(raw)
            .map(|(z, v)| TangentVector::new(*z, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vecs })
    }

    /// Horizontal projection of arbitrary vectors at each point.
    pub fn project(c: &VortexConfig, raw: &[Vec3]) -> Self {
        Self {
            vecs: c
                .points
                .iter()
                .zip(raw)
                .map(|(z, v)| horizontal_project(z, v))
                .collect(),
        }
    }

    pub fn zero(c: &VortexConfig) -> Self {
        Self {
            vecs: c.points.iter().map(|z| TangentVector::zero(*z)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    pub fn vec(&self, j: usize) -> &Vec3 {
        &self.vecs[j].vec
    }

    /// Largest Euclidean norm over the factors.
    pub fn max_norm(&self) -> f64 {
        self.vecs.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `sqrt(sum_j w_j |v_j|^2)`.
    pub fn weighted_norm(&self, weights: &[f64]) -> f64 {
        self.vecs
            .iter()
            .zip(weights)
            .map(|(v, w)| w * v.vec.norm_squared())
            .sum::<f64>()
            .sqrt()
    }

    fn check_base(&self, c: &VortexConfig) -> Result<()> {
        if self.vecs.len() != c.len() {
            return Err(Error::LengthMismatch {
                points: c.len(),
                gammas: self.vecs.len(),
            });
        }
        for (index, (v, z)) in self.vecs.iter().zip(&c.points).enumerate() {
            if (v.base.rep() - z.rep()).norm() > 1e-12 {
                return Err(Error::BaseMismatch { index });
            }
        }
        Ok(())
    }
}

/// Normalization `omega_0(u, v) = kappa Im(u^dagger v)` of the single-factor
/// symplectic form on horizontal lifts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationConstant(pub f64);

impl CalibrationConstant {
    /// The value making `J_0(Z) = Z Z^dagger - I/3` a momentum map for
    /// the pairing `tr(mu (-i xi))`.
    pub const STANDARD: Self = Self(-2.0);

    /// Finite-difference estimate of kappa from the momentum-map identity
    /// `d<J, xi>(v) = Omega(xi_M, v)` at a fixed probe point.
    pub fn calibrate() -> Self {
        let z = ProjectivePoint::basis(0);
        let v = *ProjectivePoint::basis(1).rep();
        let xi = AlgebraBasis::standard().elements[0];
        let h = 1e-6;
        let f = |t: f64| su3::pairing(&momentum_single(&z.retract(&(v * C64::new(t, 0.0)))), &xi);
        let dj = (f(h) - f(-h)) / (2.0 * h);
        let w = projective::infinitesimal_action(&xi, &z).vec;
        Self(dj / w.dotc(&v).im)
    }
}

impl Default for CalibrationConstant {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// `Omega(u, v) = sum_j Gamma_j kappa Im(u_j^dagger v_j)`.
pub fn symplectic_form(c: &VortexConfig, u: &ConfigTangent, v: &ConfigTangent) -> Result<f64> {
    symplectic_form_with(CalibrationConstant::STANDARD, c, u, v)
}

pub fn symplectic_form_with(
    kappa: CalibrationConstant,
    c: &VortexConfig,
    u: &ConfigTangent,
    v: &ConfigTangent,
) -> Result<f64> {
    u.check_base(c)?;
    v.check_base(c)?;
    Ok(c.gammas
        .iter()
        .zip(u.vecs.iter().zip(&v.vecs))
        .map(|(g, (a, b))| g * kappa.0 * a.vec.dotc(&b.vec).im)
        .sum())
}

/// `J_0(Z) = Z Z^dagger - I/3`.
pub fn momentum_single(z: &ProjectivePoint) -> CoalgebraElement {
    let r = z.rep();
    let m = r * r.adjoint() - Mat3::identity() * C64::new(1.0 / 3.0, 0.0);
    // exactly Hermitian up to rounding; symmetrize
    CoalgebraElement::raw((m + m.adjoint()) * C64::new(0.5, 0.0))
}

/// `J(c) = sum_j Gamma_j J_0(Z_j)`.
pub fn momentum_map(c: &VortexConfig) -> CoalgebraElement {
    let mut m = Mat3::zeros();
    for (z, g) in c.points.iter().zip(&c.gammas) {
        m += momentum_single(z).matrix() * C64::new(*g, 0.0);
    }
    CoalgebraElement::raw(m)
}

struct PairGeometry {
    overlap: C64,
    distance: f64,
    sin2: f64,
}

fn pair_geometry(a: &ProjectivePoint, b: &ProjectivePoint) -> PairGeometry {
    let overlap = a.overlap(b);
    let sin2 = (b.rep() - a.rep() * overlap).norm_squared();
    let distance = sin2.sqrt().atan2(overlap.modulus());
    PairGeometry {
        overlap,
        distance,
        sin2,
    }
}

fn check_collision(spec: &HamiltonianSpec, i: usize, j: usize, d: f64) -> Result<()> {
    match spec.collision_distance() {
        Some(tol) if d < tol => Err(Error::Collision { i, j, distance: d }),
        _ => Ok(()),
    }
}

/// `H = sum_{i<j} Gamma_i Gamma_j h0(d(Z_i, Z_j))`.
pub fn hamiltonian(c: &VortexConfig, spec: &HamiltonianSpec) -> Result<f64> {
    let n = c.len();
    let mut h = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let p = pair_geometry(&c.points[i], &c.points[j]);
            check_collision(spec, i, j, p.distance)?;
            h += c.gammas[i] * c.gammas[j] * spec.h0(p.distance, p.sin2);
        }
    }
    Ok(h)
}

/// Horizontal gradient `g_j` of `H` with `dH(v) = sum_j Re(g_j^dagger v_j)`.
pub fn hamiltonian_gradient(c: &VortexConfig, spec: &HamiltonianSpec) -> Result<ConfigTangent> {
    let n = c.len();
    let mut g = alloc::vec![Vec3::zeros(); n];
    for i in 0..n {
        for j in i + 1..n {
            let (zi, zj) = (&c.points[i], &c.points[j]);
            let p = pair_geometry(zi, zj);
            check_collision(spec, i, j, p.distance)?;
            let w = c.gammas[i] * c.gammas[j] * spec.pair_coefficient(p.distance, p.sin2);
            g[i] += zj.rep() * (p.overlap.conj() * w);
            g[j] += zi.rep() * (p.overlap * w);
        }
    }
    Ok(ConfigTangent::project(c, &g))
}

/// Hamiltonian vector field `X_H`, defined by `dH = Omega(-, X_H)`:
/// `X_j = i g_j / (kappa Gamma_j)`.
pub fn hamiltonian_vector_field(c: &VortexConfig, spec: &HamiltonianSpec) -> Result<ConfigTangent> {
    let kappa = CalibrationConstant::STANDARD.0;
    let grad = hamiltonian_gradient(c, spec)?;
    let vecs = grad
        .vecs
        .into_iter()
        .zip(&c.gammas)
        .map(|(t, g)| TangentVector {
            base: t.base,
            vec: t.vec * C64::new(0.0, 1.0 / (kappa * g)),
        })
        .collect();
    Ok(ConfigTangent { vecs })
}

/// Generator `xi_M(c) = (xi_CP2(Z_j))_j` of the diagonal action.
pub fn generator(c: &VortexConfig, xi: &AlgebraElement) -> ConfigTangent {
    ConfigTangent {
        vecs: c
            .points
            .iter()
            .map(|z| projective::infinitesimal_action(xi, z))
            .collect(),
    }
}

/// Metric used for the relative-equilibrium least-squares problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResidualWeighting {
    /// Factor `j` weighted by `|Gamma_j|`.
    #[default]
    Strength,
    Unweighted,
}

/// Outcome of the relative-equilibrium test `X_H(c) = xi_M(c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReResidual {
    /// `min_xi |X_H - xi_M|` in the chosen metric.
    pub residual: f64,
    /// A minimizing angular velocity (minimum-norm in coordinates).
    pub xi: AlgebraElement,
    /// `|X_H|` in the same metric.
    pub velocity_norm: f64,
}

pub fn re_residual(c: &VortexConfig, spec: &HamiltonianSpec, restrict_to_g_mu: bool) -> Result<ReResidual> {
    re_residual_with(c, spec, restrict_to_g_mu, ResidualWeighting::Strength)
}

/// Least-squares fit of `X_H(c)` by generators `xi_M(c)`, with `xi` ranging over
/// su(3) or, when `restrict_to_g_mu` is set, over the coadjoint stabilizer of `J(c)`.
pub fn re_residual_with(
    c: &VortexConfig,
    spec: &HamiltonianSpec,
    restrict_to_g_mu: bool,
    weighting: ResidualWeighting,
) -> Result<ReResidual> {
    let x = hamiltonian_vector_field(c, spec)?;
    let candidates: Vec<AlgebraElement> = if restrict_to_g_mu {
        su3::coadjoint_stabilizer(&momentum_map(c))
    } else {
        AlgebraBasis::standard().elements.to_vec()
    };
    let weights: Vec<f64> = c
        .gammas
        .iter()
        .map(|g| match weighting {
            ResidualWeighting::Strength => g.abs().sqrt(),
            ResidualWeighting::Unweighted => 1.0,
        })
        .collect();
    let stack = |t: &ConfigTangent| {
        let mut out = Vec::with_capacity(6 * c.len());
        for (v, w) in t.vecs.iter().zip(&weights) {
            linalg::push_vec3(&mut out, &(v.vec * C64::new(*w, 0.0)));
        }
        out
    };
    let rows = 6 * c.len();
    let mut cols = Vec::with_capacity(rows * candidates.len());
    for xi in &candidates {
        cols.extend(stack(&generator(c, xi)));
    }
    let a = DMatrix::from_column_slice(rows, candidates.len(), &cols);
    let b = DVector::from_vec(stack(&x));
    let (coef, residual) = linalg::least_squares(&a, &b);
    let mut xi = AlgebraElement::zero();
    for (e, k) in candidates.iter().zip(coef.iter()) {
        xi = xi + *k * *e;
    }
    Ok(ReResidual {
        residual,
        xi,
        velocity_norm: b.norm(),
    })
}

/// Orbit invariants of a triple: pairwise distances and the cyclic phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfigInvariants {
    /// `(d12, d13, d23)`.
    pub distances: [f64; 3],
    /// `arg(<Z1,Z2><Z2,Z3><Z3,Z1>)`, or `None` when an overlap vanishes.
    pub phase: Option<f64>,
}

impl ConfigInvariants {
    /// Max difference between two invariant tuples; phases compared on the circle.
    /// An undefined phase matches only another undefined phase.
    pub fn difference(&self, other: &Self) -> f64 {
        let dd = self
            .distances
            .iter()
            .zip(other.distances)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        match (self.phase, other.phase) {
            (Some(a), Some(b)) => {
                let t = crate::linalg::wrap_angle(a - b).abs();
                dd.max(t)
            }
            (None, None) => dd,
            _ => f64::INFINITY,
        }
    }
}

/// Heuristic orbit invariants for N = 3. Whether they separate all generic
/// orbits is not established; treat equality as evidence, not proof.
pub fn config_invariants(c: &VortexConfig) -> Result<ConfigInvariants> {
    config_invariants_with(c, POINT_TOL)
}

/// As [`config_invariants`], leaving the phase undefined when some overlap is below `overlap_tol`.
pub fn config_invariants_with(c: &VortexConfig, overlap_tol: f64) -> Result<ConfigInvariants> {
    if c.len() != 3 {
        return Err(Error::UnsupportedSize {
            got: c.len(),
            supported: "{3}",
        });
    }
    let p = &c.points;
    let s12 = p[0].overlap(&p[1]);
    let s23 = p[1].overlap(&p[2]);
    let s31 = p[2].overlap(&p[0]);
    let defined = [s12, s23, s31].iter().all(|s| s.modulus() >= overlap_tol);
    Ok(ConfigInvariants {
        distances: [p[0].distance(&p[1]), p[0].distance(&p[2]), p[1].distance(&p[2])],
        phase: defined.then(|| (s12 * s23 * s31).argument()),
    })
}

#[cfg(test)]
mod tests;
