//! Predicted topology of reduced spaces `J^{-1}(mu)/G_mu` for three vortices.

#[allow(unused_imports)]
use nalgebra::{ComplexField, RealField};
use core::fmt;

use crate::error::Result;

use super::polytope::{check_triple, polytope_landmarks};

/// Where the momentum value sits relative to the polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentumLocation {
    A,
    B,
    /// `c_k`, one-based.
    C(usize),
    /// A regular value in the interior of the polytope.
    InteriorRegular,
    /// Anything else (edges, non-landmark boundary points).
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducedSpaceKind {
    Point,
    SmoothSphere,
    /// A topological sphere with this many conical points (1 to 3).
    PointedSphere(u8),
    Unknown,
}

impl fmt::Display for ReducedSpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Point => f.write_str("Point"),
            Self::SmoothSphere => f.write_str("SmoothSphere"),
            Self::PointedSphere(k) => write!(f, "PointedSphere({k})"),
            Self::Unknown => f.write_str("Unknown"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedSpacePrediction {
    pub kind: ReducedSpaceKind,
    /// Short name of the rule that produced `kind`.
    pub basis: &'static str,
}

fn pred(kind: ReducedSpaceKind, basis: &'static str) -> Result<ReducedSpacePrediction> {
    Ok(ReducedSpacePrediction { kind, basis })
}

/// Relative equality of strengths.
fn same(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-12 * x.abs().max(y.abs())
}

pub fn predict_reduced_space(gammas: &[f64], at: MomentumLocation) -> Result<ReducedSpacePrediction> {
    use ReducedSpaceKind::*;
    let g = check_triple(gammas)?;
    match at {
        MomentumLocation::B => pred(Point, "vertex b: single orbit"),
        MomentumLocation::InteriorRegular => pred(SmoothSphere, "regular interior value"),
        MomentumLocation::Other => pred(Unknown, "no rule for this location"),
        MomentumLocation::A => predict_at_a(&g),
        MomentumLocation::C(k) if (1..=3).contains(&k) => predict_at_c(&g, k - 1),
        MomentumLocation::C(_) => pred(Unknown, "no rule for this location"),
    }
}

fn predict_at_a(g: &[f64; 3]) -> Result<ReducedSpacePrediction> {
    use ReducedSpaceKind::*;
    const ROT: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
    if ROT.iter().any(|&(p, q, r)| same(g[p], g[q]) && same(g[p], -g[r])) {
        return pred(PointedSphere(3), "a: two equal strengths opposite the third");
    }
    if ROT.iter().any(|&(p, q, _)| same(g[p], -g[q])) {
        return pred(PointedSphere(2), "a: a pair of opposite strengths");
    }
    let total = g[0] + g[1] + g[2];
    let scale = g.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if total.abs() <= 1e-12 * scale {
        return pred(Point, "a: zero total strength");
    }
    let criterion = g[0] * g[1] * g[2] * total;
    if criterion > 0.0 {
        pred(Point, "a: definite slice form (product times sum positive)")
    } else {
        pred(PointedSphere(1), "a: indefinite slice form (product times sum negative)")
    }
}

fn predict_at_c(g: &[f64; 3], k: usize) -> Result<ReducedSpacePrediction> {
    use ReducedSpaceKind::*;
    let l = polytope_landmarks(g)?;
    let scale = g.iter().map(|x| x.abs()).sum::<f64>();
    if l.c[k].distance(&l.a) <= 1e-12 * scale {
        return predict_at_a(g);
    }
    let (p, q) = ((k + 1) % 3, (k + 2) % 3);
    if same(g[0], g[1]) && same(g[1], g[2]) {
        return pred(PointedSphere(3), "c: all strengths equal");
    }
    for (l, m) in [(p, q), (q, p)] {
        if same(g[k], g[l]) && !same(g[k], g[m]) && !same(g[k], -g[m]) {
            return pred(PointedSphere(2), "c: two equal strengths");
        }
    }
    match slice_form_signature(g, k) {
        Definiteness::Definite => pred(Point, "c: definite slice form"),
        Definiteness::Indefinite => pred(PointedSphere(1), "c: indefinite slice form"),
        Definiteness::Degenerate => pred(Point, "c: on a wall"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Definiteness {
    Definite,
    Indefinite,
    Degenerate,
}

/// The real quadratic form on the symplectic slice at `c_k`,
/// `C|u|^2 + B (uv + conj(uv)) + A|v|^2`, as a 4x4 block form over
/// `(Re u, Re v, Im u, Im v)`, classified by its eigenvalues.
pub(crate) fn slice_form_signature(g: &[f64; 3], k: usize) -> Definiteness {
    let (p, q) = ((k + 1) % 3, (k + 2) % 3);
    let (gk, gp, gq) = (g[k], g[p], g[q]);
    let a = gk / gp * (gk - gp);
    let b = gk * gq / gp;
    let c = gq / gp * (gq + gp);
    let s = nalgebra::Matrix4::new(c, b, 0.0, 0.0, b, a, 0.0, 0.0, 0.0, 0.0, c, -b, 0.0, 0.0, -b, a);
    let eig = s.symmetric_eigenvalues();
    let scale = eig.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let tol = 1e-10 * scale.max(f64::MIN_POSITIVE);
    if eig.iter().any(|x| x.abs() <= tol) {
        Definiteness::Degenerate
    } else if eig.iter().all(|x| *x > 0.0) || eig.iter().all(|x| *x < 0.0) {
        Definiteness::Definite
    } else {
        Definiteness::Indefinite
    }
}

#[cfg(test)]
#[path = "reduction_tests.rs"]
mod tests;
