//! Multicenter integrals over Slater-type orbitals with noninteger principal
//! quantum numbers, combined with Coulomb-Yukawa correlated interaction
//! kernels `r^(mu-1) exp(-xi r) S_nu,sigma`.
//!
//! The crate is layered bottom-up:
//!
//! - [`math`]: gamma function, normalized Legendre functions, real and
//!   complex spherical harmonics, Gaunt coefficients, quadrature rules.
//! - [`basis`]: orbital and kernel definitions, pointwise evaluation,
//!   the analytic same-center overlap.
//! - [`oracle`]: brute-force integration (fuzzy-cell 3D grids, prolate
//!   spheroidal two-center quadrature, 6D Monte Carlo) used for validation
//!   and for projection inner products.
//! - [`addition`]: one-range expansions of orbital products and of the
//!   interaction kernel about a single center.
//! - [`integrals`]: one-, two- and three-center kernel integrals.
//! - [`molecule`]: molecular data model and electrostatic-type potentials.
//! - [`interaction`]: interaction energy between two molecules.
//! - [`io`] and [`cli`]: file formats and the command-line surface.

pub mod addition;
pub mod basis;
pub mod cli;
pub mod error;
pub mod integrals;
pub mod interaction;
pub mod io;
pub mod math;
pub mod molecule;
pub mod oracle;

pub use error::{Error, Result};

/// Cartesian 3-vector in bohr.
pub type Vec3 = nalgebra::Vector3<f64>;
