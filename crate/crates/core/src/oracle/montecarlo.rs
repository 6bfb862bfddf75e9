//! Importance-sampled Monte Carlo for two-electron integrals
//! `∬ ρ1(r1) ρ2(r2) h(r2 - r1) dv1 dv2`.
//!
//! Each electron coordinate is drawn from an equal mixture of per-orbital
//! proposals `q(r) ∝ r^{2n*-2} e^{-2ζ r}` around the orbital centers (radius
//! from a gamma distribution, direction uniform). Batches are seeded
//! independently from the configured seed and reduced in batch order, so the
//! result is reproducible bit for bit.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, UnitSphere};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{OracleConfig, OracleResult};
use crate::basis::{kernel_value, Density, KernelIndex};
use crate::math::gamma::lgam;
use crate::{Error, Result, Vec3};

const BATCH: usize = 8192;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoElectronIntegrand {
    pub rho1: Density,
    pub rho2: Density,
    pub kernel: KernelIndex,
    pub xi: f64,
}

struct Component {
    center: Vec3,
    gamma: Gamma<f64>,
    rate: f64,
    shape: f64,
    log_norm: f64,
}

impl Component {
    fn pdf(&self, x: &Vec3) -> f64 {
        let r = (x - self.center).norm();
        (self.log_norm + (self.shape - 3.0) * r.ln() - self.rate * r).exp()
    }
}

struct Proposal {
    parts: Vec<Component>,
}

impl Proposal {
    fn new(rho: &Density) -> Result<Self> {
        let mut parts: Vec<Component> = Vec::new();
        let mut seen: Vec<(Vec3, f64, f64)> = Vec::new();
        for (_, a, b) in &rho.terms {
            for p in [a, b] {
                let key = (p.center, p.index.n_star, p.zeta);
                if seen.iter().any(|k| (k.0 - key.0).norm() < 1e-12 && k.1 == key.1 && k.2 == key.2) {
                    continue;
                }
                seen.push(key);
                let shape = 2.0 * p.index.n_star + 1.0;
                let rate = 2.0 * p.zeta;
                let gamma = Gamma::new(shape, 1.0 / rate)
                    .map_err(|e| Error::Domain(format!("invalid proposal distribution: {e}")))?;
                let log_norm = shape * rate.ln() - lgam(shape) - (4.0 * PI).ln();
                parts.push(Component { center: p.center, gamma, rate, shape, log_norm });
            }
        }
        if parts.is_empty() {
            return Err(Error::Domain("Monte Carlo density has no terms".into()));
        }
        Ok(Self { parts })
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> Vec3 {
        let k = rng.random_range(0..self.parts.len());
        let c = &self.parts[k];
        let r = c.gamma.sample(rng);
        let d: [f64; 3] = UnitSphere.sample(rng);
        c.center + Vec3::new(d[0], d[1], d[2]) * r
    }

    fn pdf(&self, x: &Vec3) -> f64 {
        self.parts.iter().map(|c| c.pdf(x)).sum::<f64>() / self.parts.len() as f64
    }
}

fn batch_seed(seed: u64, batch: u64) -> u64 {
    seed ^ batch.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Six-dimensional Monte Carlo estimate with its standard error.
pub fn integrate_6d_mc(integrand: &TwoElectronIntegrand, cfg: &OracleConfig) -> Result<OracleResult> {
    let q1 = Proposal::new(&integrand.rho1)?;
    let q2 = Proposal::new(&integrand.rho2)?;
    let n_batches = cfg.mc_samples.div_ceil(BATCH).max(2);
    let stats: Vec<(f64, f64)> = (0..n_batches as u64)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(batch_seed(cfg.seed, b));
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..BATCH {
                let x1 = q1.sample(&mut rng);
                let x2 = q2.sample(&mut rng);
                let num = integrand.rho1.value(&x1)
                    * integrand.rho2.value(&x2)
                    * kernel_value(&integrand.kernel, integrand.xi, &(x2 - x1));
                let v = num / (q1.pdf(&x1) * q2.pdf(&x2));
                let v = if v.is_finite() { v } else { 0.0 };
                s += v;
                s2 += v * v;
            }
            (s, s2)
        })
        .collect();
    let moments = |upto: usize| -> (f64, f64) {
        let n = (upto * BATCH) as f64;
        let (s, s2) = stats[..upto].iter().fold((0.0, 0.0), |acc, x| (acc.0 + x.0, acc.1 + x.1));
        let mean = s / n;
        let var = (s2 / n - mean * mean).max(0.0);
        (mean, (var / n).sqrt())
    };
    let (mean, se) = moments(n_batches);
    let (_, se_half) = moments(n_batches / 2);
    let warning = (se >= se_half).then(|| format!("standard error did not decrease ({se_half:e} -> {se:e})"));
    Ok(OracleResult { value: mean, error_estimate: se, evaluations: (n_batches * BATCH) as u64, warning })
}
