//! The momentum polytope: landmark values, random sampling and a planar hull in
//! chamber coordinates.

#[allow(unused_imports)]
use nalgebra::{ComplexField, RealField};
use alloc::vec::Vec;
use rand::Rng;

use crate::error::{Error, Result};
use crate::projective::ProjectivePoint;
use crate::su3::{weyl_projection, CoalgebraElement, WeylPoint};
use crate::vortex::{momentum_map, momentum_single, VortexConfig};

/// Weyl points of the distinguished torus-fixed configurations:
/// `a` (triple point), `b` (totally orthogonal) and `c_k` (point `k` orthogonal
/// to the coincident other two).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolytopeLandmarks {
    pub a: WeylPoint,
    pub b: WeylPoint,
    pub c: [WeylPoint; 3],
}

impl PolytopeLandmarks {
    /// `c_k` for one-based `k`.
    pub fn c_k(&self, k: usize) -> WeylPoint {
        self.c[k - 1]
    }

    /// All five with labels, in the order a, b, c1, c2, c3.
    pub fn labelled(&self) -> [(&'static str, WeylPoint); 5] {
        [("a", self.a), ("b", self.b), ("c1", self.c[0]), ("c2", self.c[1]), ("c3", self.c[2])]
    }
}

pub(crate) fn check_triple(gammas: &[f64]) -> Result<[f64; 3]> {
    let g: [f64; 3] = gammas.try_into().map_err(|_| Error::UnsupportedSize {
        got: gammas.len(),
        supported: "{3}",
    })?;
    if let Some(index) = g.iter().position(|x| *x == 0.0 || !x.is_finite()) {
        return Err(Error::ZeroStrength { index });
    }
    Ok(g)
}

fn weighted(terms: &[(f64, usize)]) -> WeylPoint {
    let mut m = CoalgebraElement::zero();
    for (g, k) in terms {
        m = m + *g * momentum_single(&ProjectivePoint::basis(*k));
    }
    weyl_projection(&m)
}

pub fn polytope_landmarks(gammas: &[f64]) -> Result<PolytopeLandmarks> {
    let g = check_triple(gammas)?;
    let total = g[0] + g[1] + g[2];
    let c = |k: usize| {
        let rest: f64 = total - g[k];
        weighted(&[(g[k], 0), (rest, 1)])
    };
    Ok(PolytopeLandmarks {
        a: weighted(&[(total, 0)]),
        b: weighted(&[(g[0], 0), (g[1], 1), (g[2], 2)]),
        c: [c(0), c(1), c(2)],
    })
}

/// Weyl projections of the momenta of `n` independent uniform random configurations.
pub fn sample_polytope<R: Rng + ?Sized>(gammas: &[f64], n: usize, rng: &mut R) -> Result<Vec<WeylPoint>> {
    (0..n)
        .map(|_| {
            let pts = gammas.iter().map(|_| ProjectivePoint::random(rng)).collect();
            VortexConfig::new(pts, gammas.to_vec()).map(|c| weyl_projection(&momentum_map(&c)))
        })
        .collect()
}

/// Convex hull of points in the plane, counter-clockwise without collinear vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ChamberHull {
    pub vertices: Vec<(f64, f64)>,
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl ChamberHull {
    /// Monotone-chain hull.
    pub fn new(points: &[(f64, f64)]) -> Self {
        let mut p: Vec<(f64, f64)> = points.to_vec();
        p.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        p.dedup();
        if p.len() < 3 {
            return Self { vertices: p };
        }
        let mut hull: Vec<(f64, f64)> = Vec::with_capacity(2 * p.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Vec<(f64, f64)> = if pass == 0 { p.clone() } else { p.iter().rev().copied().collect() };
            for q in iter {
                while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0 {
                    hull.pop();
                }
                hull.push(q);
            }
            hull.pop();
        }
        Self { vertices: hull }
    }

    pub fn from_weyl(points: &[WeylPoint]) -> Self {
        let xy: Vec<(f64, f64)> = points.iter().map(|w| w.chamber_coords()).collect();
        Self::new(&xy)
    }

    /// Whether `q` lies in the hull grown by `inflate` (measured perpendicular to each edge).
    pub fn contains(&self, q: (f64, f64), inflate: f64) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return self.vertices.iter().any(|v| ((v.0 - q.0).powi(2) + (v.1 - q.1).powi(2)) <= inflate * inflate)
                || (n == 2 && segment_distance(self.vertices[0], self.vertices[1], q) <= inflate);
        }
        (0..n).all(|i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
            cross(a, b, q) >= -inflate * len
        })
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.0 * b.1 - a.1 * b.0
            })
            .sum::<f64>()
            * 0.5
    }
}

fn segment_distance(a: (f64, f64), b: (f64, f64), q: (f64, f64)) -> f64 {
    let d = (b.0 - a.0, b.1 - a.1);
    let len2 = d.0 * d.0 + d.1 * d.1;
    let t = if len2 > 0.0 { (((q.0 - a.0) * d.0 + (q.1 - a.1) * d.1) / len2).clamp(0.0, 1.0) } else { 0.0 };
    let p = (a.0 + t * d.0, a.1 + t * d.1);
    ((q.0 - p.0).powi(2) + (q.1 - p.1).powi(2)).sqrt()
}

#[cfg(test)]
#[path = "polytope_tests.rs"]
mod tests;
