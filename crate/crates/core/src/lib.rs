//! Point vortices on the complex projective plane with SU(3) symmetry.
//!
//! Configurations are ordered tuples of points of CP2 with nonzero real
//! strengths. The crate provides the SU(3) coadjoint geometry, the momentum
//! map and pairwise invariant Hamiltonians, a norm-preserving integrator, and
//! analysis tools for isotropy types, relative equilibria and the momentum
//! polytope. It is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod integrate;
mod linalg;
pub mod projective;
pub mod su3;
pub mod vortex;

pub use error::{Error, Result};
pub use projective::{ProjectivePoint, TangentVector};
pub use su3::{AlgebraBasis, AlgebraElement, CoalgebraElement, WeylPoint};
pub use vortex::{ConfigTangent, HamiltonianSpec, InteractionTable, VortexConfig};

/// Complex scalar.
pub type C64 = nalgebra::Complex<f64>;
/// 3x3 complex matrix.
pub type Mat3 = nalgebra::Matrix3<C64>;
/// Vector in C^3.
pub type Vec3 = nalgebra::Vector3<C64>;
