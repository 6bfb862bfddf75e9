//! Brute-force reference integrators.
//!
//! These never use the series machinery of [`crate::addition`] and serve both
//! as validation oracles and as the source of projection inner products.

pub mod grid3d;
pub mod montecarlo;
pub mod spheroidal;

use serde::{Deserialize, Serialize};

pub use grid3d::{integrate_3d, integrate_3d_batch, Grid3d};
pub use montecarlo::{integrate_6d_mc, TwoElectronIntegrand};
pub use spheroidal::{integrate_two_center, integrate_two_center_batch, overlap_two_center_spheroidal, SpheroidalConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Radial nodes per center at the first refinement level.
    pub radial_order: usize,
    /// Gauss-Legendre nodes in `cos θ`; `2x` that many uniform nodes in `φ`.
    pub angular_order: usize,
    /// Iterations of the fuzzy-cell switching polynomial.
    pub partition_sharpness: usize,
    pub mc_samples: usize,
    pub seed: u64,
    pub target_tol: f64,
    pub max_levels: usize,
    /// Radial map midpoint `r_m`; callers set it to `1 / ζ_max`.
    pub radial_scale: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            radial_order: 60,
            angular_order: 16,
            partition_sharpness: 3,
            mc_samples: 1 << 20,
            seed: 0,
            target_tol: 1e-10,
            max_levels: 5,
            radial_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub warning: Option<String>,
}
