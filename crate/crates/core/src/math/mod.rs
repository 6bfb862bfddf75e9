//! Special functions and quadrature rules shared by every other module.

pub mod bessel;
pub mod gamma;
pub mod gaunt;
pub mod harmonics;
pub mod laguerre;
pub mod legendre;
pub mod quadrature;
pub mod radial_kernel;

pub use gamma::{gamma_real, ln_gamma_real};
pub use gaunt::gaunt_real;
pub use harmonics::{lm_count, lm_index, real_harmonic, sph_harm, AngularIndex, HarmonicKind, RealHarmonics};
pub use legendre::legendre_norm;
