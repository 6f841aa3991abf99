//! The Lie algebra su(3), its dual, and the positive Weyl chamber.
//!
//! Algebra elements are traceless anti-Hermitian 3x3 matrices. Coalgebra
//! elements (momentum values) are traceless Hermitian matrices, paired with
//! the algebra through `<mu, xi> = tr(mu (-i xi))`.

use core::f64::consts::SQRT_2;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::vec::Vec;
use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg;
use crate::{Mat3, C64};

/// Tolerance used when validating algebra/coalgebra matrices.
pub const MATRIX_TOL: f64 = 1e-12;

/// Default relative tolerance for deciding that two eigenvalues coincide.
pub const DEGENERACY_TOL: f64 = 1e-9;

const I: C64 = C64::new(0.0, 1.0);

fn scale_of(m: &Mat3) -> f64 {
    m.iter().map(|z| z.modulus()).fold(1.0, f64::max)
}

fn trace(m: &Mat3) -> C64 {
    m[(0, 0)] + m[(1, 1)] + m[(2, 2)]
}

fn max_entry(m: &Mat3) -> f64 {
    m.iter().map(|z| z.modulus()).fold(0.0, f64::max)
}

/// An element of su(3): traceless anti-Hermitian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraElement(Mat3);

impl AlgebraElement {
    pub fn new(matrix: Mat3) -> Result<Self> {
        let scale = scale_of(&matrix);
        let deviation = max_entry(&(matrix + matrix.adjoint())).max(trace(&matrix).modulus());
        if deviation > MATRIX_TOL * scale {
            return Err(Error::NotAlgebra { deviation });
        }
        Ok(Self(matrix))
    }

    pub fn zero() -> Self {
        Self(Mat3::zeros())
    }

    /// `i * h` for a traceless Hermitian `h`.
    pub fn from_hermitian(h: &CoalgebraElement) -> Self {
        Self(h.0 * I)
    }

    /// Diagonal element `i * diag(t)`; `t` must sum to zero.
    pub fn diagonal(t: [f64; 3]) -> Result<Self> {
        Self::new(Mat3::from_diagonal(&nalgebra::Vector3::new(
            C64::new(0.0, t[0]),
            C64::new(0.0, t[1]),
            C64::new(0.0, t[2]),
        )))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    /// Real inner product `Re tr(xi^dagger eta)`.
    pub fn inner(&self, other: &Self) -> f64 {
        (self.0.adjoint() * other.0).trace().re
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    /// Commutator `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Self {
        Self(self.0 * other.0 - other.0 * self.0)
    }

    /// The one-parameter subgroup `exp(t xi)` as a special unitary matrix.
    pub fn exp(&self, t: f64) -> Mat3 {
        let h = self.0 * (-I);
        let eig = SymmetricEigen::new(h);
        let u = eig.eigenvectors;
        let phases = nalgebra::Vector3::from_iterator(
            eig.eigenvalues.iter().map(|&l| C64::new(0.0, t * l).exp()),
        );
        u * Mat3::from_diagonal(&phases) * u.adjoint()
    }
}

impl Add for AlgebraElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for AlgebraElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Neg for AlgebraElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul<AlgebraElement> for f64 {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement(rhs.0 * C64::new(self, 0.0))
    }
}

/// An element of su(3)*, represented as a traceless Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoalgebraElement(Mat3);

impl CoalgebraElement {
    pub fn new(matrix: Mat3) -> Result<Self> {
        let scale = scale_of(&matrix);
        let deviation = max_entry(&(matrix - matrix.adjoint())).max(trace(&matrix).modulus());
        if deviation > MATRIX_TOL * scale {
            return Err(Error::NotCoalgebra { deviation });
        }
        Ok(Self(matrix))
    }

    /// Hermitian part of `m` with its trace removed. Total on any matrix.
    pub fn project(m: &Mat3) -> Self {
        let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
        let shift = trace(&h) / C64::new(3.0, 0.0);
        Self(h - Mat3::identity() * shift)
    }

    pub fn zero() -> Self {
        Self(Mat3::zeros())
    }

    /// `diag(d)`; the entries must sum to zero.
    pub fn diagonal(d: [f64; 3]) -> Result<Self> {
        Self::new(Mat3::from_diagonal(&nalgebra::Vector3::new(
            C64::new(d[0], 0.0),
            C64::new(d[1], 0.0),
            C64::new(d[2], 0.0),
        )))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub(crate) fn raw(m: Mat3) -> Self {
        Self(m)
    }

    /// Coadjoint action `g mu g^{-1}` for unitary `g`.
    pub fn conjugate(&self, g: &Mat3) -> Self {
        Self(g * self.0 * g.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.modulus_squared()).sum::<f64>().sqrt()
    }

    /// Real eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let e = self.0.symmetric_eigenvalues();
        let mut l = [e[0], e[1], e[2]];
        l.sort_by(f64::total_cmp);
        l
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues().iter().map(|l| l.abs()).fold(0.0, f64::max)
    }

    /// Coordinates `<mu, b_a>` against the standard algebra basis.
    pub fn coords(&self) -> [f64; 8] {
        let basis = AlgebraBasis::standard();
        core::array::from_fn(|a| pairing(self, &basis.elements[a]))
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn from_coords(c: &[f64; 8]) -> Self {
        let basis = AlgebraBasis::standard();
        let mut m = Mat3::zeros();
        for (a, x) in c.iter().enumerate() {
            // b_a = i lambda_a / sqrt 2, so lambda_a / sqrt 2 = -i b_a.
            m += basis.elements[a].0 * C64::new(0.0, -*x);
        }
        Self(m)
    }
}

impl Add for CoalgebraElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for CoalgebraElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul<CoalgebraElement> for f64 {
    type Output = CoalgebraElement;
    fn mul(self, rhs: CoalgebraElement) -> CoalgebraElement {
        CoalgebraElement(rhs.0 * C64::new(self, 0.0))
    }
}

/// An orthonormal basis of su(3) for the inner product `Re tr(xi^dagger eta)`.
///
/// The standard basis is `i lambda_a / sqrt 2` for the Gell-Mann matrices `lambda_a`.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    pub elements: [AlgebraElement; 8],
}

impl AlgebraBasis {
    pub fn standard() -> Self {
        let z = C64::new(0.0, 0.0);
        let s = 1.0 / SQRT_2;
        // i * lambda_a / sqrt 2, written out entry by entry
        let re = |x: f64| C64::new(x * s, 0.0);
        let im = |x: f64| C64::new(0.0, x * s);
        let l8 = 1.0 / 3f64.sqrt();
        let m = [
            Mat3::new(z, im(1.0), z, im(1.0), z, z, z, z, z),
            Mat3::new(z, re(1.0), z, re(-1.0), z, z, z, z, z),
            Mat3::new(im(1.0), z, z, z, im(-1.0), z, z, z, z),
            Mat3::new(z, z, im(1.0), z, z, z, im(1.0), z, z),
            Mat3::new(z, z, re(1.0), z, z, z, re(-1.0), z, z),
            Mat3::new(z, z, z, z, z, im(1.0), z, im(1.0), z),
            Mat3::new(z, z, z, z, z, re(1.0), z, re(-1.0), z),
            Mat3::new(im(l8), z, z, z, im(l8), z, z, z, im(-2.0 * l8)),
        ];
        Self {
            elements: m.map(AlgebraElement),
        }
    }

    /// `sum_a c_a b_a`.
    pub fn combine(&self, c: &[f64]) -> AlgebraElement {
        let mut m = Mat3::zeros();
        for (b, x) in self.elements.iter().zip(c) {
            m += b.0 * C64::new(*x, 0.0);
        }
        AlgebraElement(m)
    }

    pub fn coords(&self, xi: &AlgebraElement) -> [f64; 8] {
        core::array::from_fn(|a| self.elements[a].inner(xi))
    }

    /// Gram matrix `<b_i, b_j>`.
    pub fn gram(&self) -> DMatrix<f64> {
        DMatrix::from_fn(8, 8, |i, j| self.elements[i].inner(&self.elements[j]))
    }
}

/// `<mu, xi> = tr(mu (-i xi))`, real for valid arguments.
pub fn pairing(mu: &CoalgebraElement, xi: &AlgebraElement) -> f64 {
    (mu.0 * xi.0 * (-I)).trace().re
}

/// Basis of the coadjoint stabilizer algebra `{xi : [mu, xi] = 0}` with the default tolerance.
pub fn coadjoint_stabilizer(mu: &CoalgebraElement) -> Vec<AlgebraElement> {
    coadjoint_stabilizer_with(mu, DEGENERACY_TOL)
}

/// Kernel of `xi -> [mu, xi]` on su(3). Singular values of this map are the
/// eigenvalue gaps of `mu`, so gaps below `rel_tol * spectral_radius` count as degenerate.
pub fn coadjoint_stabilizer_with(mu: &CoalgebraElement, rel_tol: f64) -> Vec<AlgebraElement> {
    let basis = AlgebraBasis::standard();
    let mut cols = Vec::with_capacity(18 * 8);
    for b in &basis.elements {
        let c = mu.0 * b.0 - b.0 * mu.0;
        for z in c.iter() {
            cols.push(z.re);
            cols.push(z.im);
        }
    }
    let a = DMatrix::from_column_slice(18, 8, &cols);
    let threshold = rel_tol * mu.spectral_radius();
    linalg::null_space(&a, threshold)
        .into_iter()
        .map(|v| basis.combine(v.as_slice()))
        .collect()
}

/// A point of the closed positive Weyl chamber: `l1 >= l2 >= l3`, `l1 + l2 + l3 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylPoint {
    lambda: [f64; 3],
}

impl WeylPoint {
    pub fn new(lambda: [f64; 3]) -> Result<Self> {
        let [a, b, c] = lambda;
        let scale = a.abs().max(b.abs()).max(c.abs()).max(1.0);
        if !(a >= b && b >= c) || (a + b + c).abs() > 1e-10 * scale {
            return Err(Error::NotWeylPoint(a, b, c));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> [f64; 3] {
        self.lambda
    }

    pub fn chamber_coords(&self) -> (f64, f64) {
        chamber_coords(self)
    }

    /// Euclidean distance between the triples.
    pub fn distance(&self, other: &WeylPoint) -> f64 {
        self.lambda
            .iter()
            .zip(other.lambda)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Whether two of the eigenvalues coincide, relative to the spectral radius.
    pub fn on_wall(&self, rel_tol: f64) -> bool {
        let [a, b, c] = self.lambda;
        let r = a.abs().max(c.abs());
        a - b <= rel_tol * r || b - c <= rel_tol * r
    }

    /// Diagonal coalgebra element with these eigenvalues.
    pub fn to_coalgebra(&self) -> CoalgebraElement {
        CoalgebraElement::project(&Mat3::from_diagonal(&nalgebra::Vector3::new(
            C64::new(self.lambda[0], 0.0),
            C64::new(self.lambda[1], 0.0),
            C64::new(self.lambda[2], 0.0),
        )))
    }
}

/// Sorted eigenvalues of `mu`, shifted to sum exactly to zero.
pub fn weyl_projection(mu: &CoalgebraElement) -> WeylPoint {
    let [l3, l2, l1] = mu.eigenvalues();
    let mean = (l1 + l2 + l3) / 3.0;
    WeylPoint {
        lambda: [l1 - mean, l2 - mean, l3 - mean],
    }
}

/// Isometric chart of the sum-zero plane: `x = (l1 - l2)/sqrt 2`, `y = (l1 + l2 - 2 l3)/sqrt 6`.
pub fn chamber_coords(w: &WeylPoint) -> (f64, f64) {
    let [a, b, c] = w.lambda;
    ((a - b) / SQRT_2, (a + b - 2.0 * c) / 6f64.sqrt())
}

/// Maximum entrywise deviation of `g` from special unitarity.
pub fn special_unitary_deviation(g: &Mat3) -> f64 {
    let u = max_entry(&(g.adjoint() * g - Mat3::identity()));
    let d = (g.determinant() - C64::new(1.0, 0.0)).modulus();
    u.max(d)
}

/// Haar-distributed special unitary matrix (QR of a complex Gaussian matrix).
pub fn random_special_unitary<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    let mut g = || -> f64 { StandardNormal.sample(rng) };
    let z = Mat3::from_fn(|_, _| C64::new(g(), g()));
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = nalgebra::Vector3::from_fn(|i, _| {
        let d = r[(i, i)];
        d / C64::new(d.modulus(), 0.0)
    });
    let u = q * Mat3::from_diagonal(&phases);
    let det = u.determinant();
    let fix = crate::linalg::cis(-det.argument() / 3.0);
    u * fix
}

/// Random algebra element with independent standard normal coordinates.
pub fn random_algebra_element<R: Rng + ?Sized>(rng: &mut R) -> AlgebraElement {
    let c: [f64; 8] = core::array::from_fn(|_| StandardNormal.sample(rng));
    AlgebraBasis::standard().combine(&c)
}

/// Random traceless Hermitian matrix with independent standard normal coordinates.
pub fn random_coalgebra_element<R: Rng + ?Sized>(rng: &mut R) -> CoalgebraElement {
    let c: [f64; 8] = core::array::from_fn(|_| StandardNormal.sample(rng));
    CoalgebraElement::from_coords(&c)
}
