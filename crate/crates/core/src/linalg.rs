//! Small dense linear-algebra helpers shared by the analysis routines.

use alloc::vec::Vec;
// Float math resolves through these traits unless a std-enabled build makes it inherent.
#[allow(unused_imports)]
use nalgebra::ComplexField;
use nalgebra::{DMatrix, DVector};

use crate::{Vec3, C64};

/// Writes a complex 3-vector into six consecutive reals (re, im interleaved).
/// `e^{i theta}`.
pub(crate) fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// Representative of `theta` modulo 2 pi in `(-pi, pi]`.
pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let tau = 2.0 * core::f64::consts::PI;
    let t = theta - tau * (theta / tau).round();
    if t <= -core::f64::consts::PI { t + tau } else { t }
}

pub(crate) fn push_vec3(out: &mut Vec<f64>, v: &Vec3) {
    for z in v.iter() {
        out.push(z.re);
        out.push(z.im);
    }
}

pub(crate) struct Decomposition {
    /// Descending singular values, padded with zeros up to the column count.
    pub values: Vec<f64>,
    /// Right singular vectors, one per entry of `values`.
    pub right: Vec<DVector<f64>>,
    /// Left singular vectors, restricted to the original rows.
    pub left: Vec<DVector<f64>>,
}

/// Full right-singular basis of `a`, also when `a` has fewer rows than columns.
///
/// One-sided Jacobi on the columns. nalgebra's bidiagonal SVD (0.35) returns
/// inaccurate singular values on some rank-deficient inputs when singular
/// vectors are requested; Jacobi is slower but accurate to working precision
/// on the small matrices used here.
pub(crate) fn decompose(a: &DMatrix<f64>) -> Decomposition {
    let (m, n) = a.shape();
    let mut w = if m < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let mut v = DMatrix::<f64>::identity(n, n);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dot(&w.column(q));
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_columns(&mut w, p, q, c, s);
                rotate_columns(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..n).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let values = order.iter().map(|&i| norms[i]).collect();
    let right = order.iter().map(|&i| v.column(i).into_owned()).collect();
    let left = order
        .iter()
        .map(|&i| {
            let col = w.column(i).rows(0, m).into_owned();
            if norms[i] > 0.0 { col / norms[i] } else { col }
        })
        .collect();
    Decomposition { values, right, left }
}

const JACOBI_MAX_SWEEPS: usize = 80;

fn rotate_columns(x: &mut DMatrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    for r in 0..x.nrows() {
        let (xp, xq) = (x[(r, p)], x[(r, q)]);
        x[(r, p)] = c * xp - s * xq;
        x[(r, q)] = s * xp + c * xq;
    }
}

/// Orthonormal basis of the kernel: right singular vectors with singular value `<= threshold`.
pub(crate) fn null_space(a: &DMatrix<f64>, threshold: f64) -> Vec<DVector<f64>> {
    let d = decompose(a);
    d.values
        .iter()
        .zip(d.right)
        .filter(|(s, _)| **s <= threshold)
        .map(|(_, v)| v)
        .collect()
}


/// Minimum-norm least-squares solution of `a x = b` and its residual norm.
///
pub(crate) fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>) -> (DVector<f64>, f64) {
    let n = a.ncols();
    if n == 0 || a.nrows() == 0 {
        return (DVector::zeros(n), b.norm());
    }
    let d = decompose(a);
    let eps = 1e-12 * d.values[0].max(f64::MIN_POSITIVE);
    let mut x = DVector::zeros(n);
    for ((s, v), u) in d.values.iter().zip(&d.right).zip(&d.left) {
        if *s > eps {
            x += v * (u.dot(b) / s);
        }
    }
    let r = (a * &x - b).norm();
    (x, r)
}
