//! Invariant pair interactions `h0(d)` as functions of the Fubini-Study distance.

use core::f64::consts::FRAC_PI_2;

use alloc::vec::Vec;

use nalgebra::ComplexField;

use crate::error::{Error, Result};

/// Distance below which a singular interaction reports a collision.
pub const COLLISION_TOL: f64 = 1e-8;

/// The pair interaction `h0` of the pairwise Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianSpec {
    /// `h0(d) = ln sin d`; singular at collisions, critical at `d = pi/2`.
    LogSin,
    /// `h0(d) = cos 2d`; smooth on all of CP2 x CP2.
    Cosine,
    /// Tabulated `h0` interpolated by a clamped cubic spline.
    Table(InteractionTable),
}

impl Default for HamiltonianSpec {
    fn default() -> Self {
        Self::LogSin
    }
}

impl HamiltonianSpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::LogSin => "log_sin",
            Self::Cosine => "cosine",
            Self::Table(_) => "table",
        }
    }

    /// Distance below which the interaction is undefined, if any.
    pub fn collision_distance(&self) -> Option<f64> {
        match self {
            Self::LogSin => Some(COLLISION_TOL),
            Self::Cosine => None,
            Self::Table(t) => (t.d_min > 0.0).then_some(t.d_min),
        }
    }

    pub fn is_singular(&self) -> bool {
        self.collision_distance().is_some()
    }

    /// `h0(d)`. `sin2` is `sin^2 d`, passed separately to keep precision near collisions.
    pub fn h0(&self, d: f64, sin2: f64) -> f64 {
        match self {
            Self::LogSin => 0.5 * sin2.ln(),
            Self::Cosine => (2.0 * d).cos(),
            Self::Table(t) => t.value(d),
        }
    }

    /// Coefficient `phi` with `grad_{Z_i} h0(d(Z_i, Z_j)) = phi * P_i(Z_j <Z_j, Z_i>)`.
    ///
    /// Writing `q = cos^2 d`, `phi = 2 dh0/dq`.
    pub(crate) fn pair_coefficient(&self, d: f64, sin2: f64) -> f64 {
        match self {
            Self::LogSin => -1.0 / sin2,
            Self::Cosine => 4.0,
            Self::Table(t) => {
                let (s, c) = (d.sin(), d.cos());
                if c < 1e-7 {
                    // h0'(pi/2) = 0, so -h0'(d) / (sin d cos d) -> h0''(pi/2)
                    t.second_derivative(d)
                } else if s < 1e-7 {
                    -t.second_derivative(d)
                } else {
                    -t.derivative(d) / (s * c)
                }
            }
        }
    }
}

/// Clamped cubic spline through `h0` sampled on a uniform grid over `[d_min, pi/2]`.
///
/// The right end is clamped to slope 0 (smoothness across the orthogonal locus
/// requires `h0'(pi/2) = 0`), the left end to a second-order one-sided difference.
/// For smooth `h0` the interpolation error is `O(h^4)` in value and `O(h^3)` in slope,
/// `h` being the grid spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionTable {
    d_min: f64,
    step: f64,
    values: Vec<f64>,
    moments: Vec<f64>,
}

impl InteractionTable {
    pub fn new(d_min: f64, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 3 {
            return Err(Error::InvalidTable("need at least 3 samples"));
        }
        if !(0.0..FRAC_PI_2).contains(&d_min) {
            return Err(Error::InvalidTable("d_min must lie in [0, pi/2)"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTable("samples must be finite"));
        }
        let h = (FRAC_PI_2 - d_min) / (n - 1) as f64;
        let y = &values;
        let left_slope = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
        let right_slope = 0.0;

        // tridiagonal system for the second derivatives
        let mut sub = alloc::vec![1.0; n];
        let mut diag = alloc::vec![4.0; n];
        let mut sup = alloc::vec![1.0; n];
        let mut rhs = alloc::vec![0.0; n];
        diag[0] = 2.0;
        diag[n - 1] = 2.0;
        sub[0] = 0.0;
        sup[n - 1] = 0.0;
        rhs[0] = 6.0 / h * ((y[1] - y[0]) / h - left_slope);
        rhs[n - 1] = 6.0 / h * (right_slope - (y[n - 1] - y[n - 2]) / h);
        for k in 1..n - 1 {
            rhs[k] = 6.0 / (h * h) * (y[k + 1] - 2.0 * y[k] + y[k - 1]);
        }
        // Thomas algorithm
        for k in 1..n {
            let m = sub[k] / diag[k - 1];
            diag[k] -= m * sup[k - 1];
            rhs[k] -= m * rhs[k - 1];
        }
        let mut moments = alloc::vec![0.0; n];
        moments[n - 1] = rhs[n - 1] / diag[n - 1];
        for k in (0..n - 1).rev() {
            moments[k] = (rhs[k] - sup[k] * moments[k + 1]) / diag[k];
        }
        Ok(Self {
            d_min,
            step: h,
            values,
            moments,
        })
    }

    /// Samples `f` on `n` uniform nodes over `[d_min, pi/2]`.
    pub fn from_fn(d_min: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTable("need at least 3 samples"));
        }
        let h = (FRAC_PI_2 - d_min) / (n - 1) as f64;
        Self::new(d_min, (0..n).map(|k| f(d_min + k as f64 * h)).collect())
    }

    pub fn d_min(&self) -> f64 {
        self.d_min
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn locate(&self, d: f64) -> (usize, f64, f64) {
        let n = self.values.len();
        let x = ((d - self.d_min) / self.step).clamp(0.0, (n - 1) as f64);
        let k = (x.floor() as usize).min(n - 2);
        let a = d - (self.d_min + k as f64 * self.step);
        let b = self.step - a;
        (k, a, b)
    }

    pub fn value(&self, d: f64) -> f64 {
        let (k, a, b) = self.locate(d);
        let (h, m, y) = (self.step, &self.moments, &self.values);
        m[k] * b * b * b / (6.0 * h)
            + m[k + 1] * a * a * a / (6.0 * h)
            + (y[k] / h - m[k] * h / 6.0) * b
            + (y[k + 1] / h - m[k + 1] * h / 6.0) * a
    }

    pub fn derivative(&self, d: f64) -> f64 {
        let (k, a, b) = self.locate(d);
        let (h, m, y) = (self.step, &self.moments, &self.values);
        -m[k] * b * b / (2.0 * h) + m[k + 1] * a * a / (2.0 * h) - (y[k] / h - m[k] * h / 6.0)
            + (y[k + 1] / h - m[k + 1] * h / 6.0)
    }

    pub fn second_derivative(&self, d: f64) -> f64 {
        let (k, a, b) = self.locate(d);
        (self.moments[k] * b + self.moments[k + 1] * a) / self.step
    }
}
