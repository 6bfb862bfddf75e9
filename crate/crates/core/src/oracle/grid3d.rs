//! Multicenter 3D quadrature with fuzzy-cell space partitioning.
//!
//! Every center owns a spherical product grid (rational radial map times
//! Gauss-Legendre in `cos θ` times a uniform `φ` grid). Overlapping grids
//! are blended with smooth cell weights built from the iterated switching
//! polynomial `f(x) = 1.5 x - 0.5 x^3`.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::{OracleConfig, OracleResult};
use crate::math::quadrature::{gauss_legendre, radial_rule};
use crate::{Error, Result, Vec3};

const CHUNK: usize = 2048;

/// Quadrature points and weights covering all of space.
#[derive(Debug, Clone)]
pub struct Grid3d {
    pub points: Vec<(Vec3, f64)>,
}

fn cell_weight(p: &Vec3, i: usize, centers: &[Vec3], inv_dist: &[f64], sharpness: usize) -> f64 {
    let n = centers.len();
    let dist: Vec<f64> = centers.iter().map(|c| (p - c).norm()).collect();
    let cell = |k: usize| -> f64 {
        let mut prod = 1.0;
        for j in 0..n {
            if j == k {
                continue;
            }
            let mut x = (dist[k] - dist[j]) * inv_dist[k * n + j];
            for _ in 0..sharpness {
                x = 1.5 * x - 0.5 * x * x * x;
            }
            prod *= 0.5 * (1.0 - x);
            if prod == 0.0 {
                break;
            }
        }
        prod
    };
    let own = cell(i);
    if own == 0.0 {
        return 0.0;
    }
    let total: f64 = (0..n).map(cell).sum();
    own / total
}

fn dedup(centers: &[Vec3]) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    for c in centers {
        if !out.iter().any(|x| (x - c).norm() < 1e-10) {
            out.push(*c);
        }
    }
    out
}

impl Grid3d {
    /// Grid at refinement `level` (orders grow by half the base order per level).
    pub fn build(centers: &[Vec3], cfg: &OracleConfig, level: usize) -> Self {
        let centers = dedup(centers);
        let n_r = cfg.radial_order.max(1) * (level + 2) / 2;
        let n_t = cfg.angular_order.max(1) * (level + 2) / 2;
        Self::with_orders(&centers, cfg.radial_scale, n_r, n_t, cfg.partition_sharpness)
    }

    pub fn with_orders(centers: &[Vec3], radial_scale: f64, n_r: usize, n_theta: usize, sharpness: usize) -> Self {
        let centers = dedup(centers);
        let nc = centers.len();
        let mut inv_dist = vec![0.0; nc * nc];
        for i in 0..nc {
            for j in 0..nc {
                if i != j {
                    inv_dist[i * nc + j] = 1.0 / (centers[i] - centers[j]).norm();
                }
            }
        }
        let radial = radial_rule(n_r, radial_scale, 3);
        let n_phi = 2 * n_theta;
        let dphi = 2.0 * PI / n_phi as f64;
        let mut dirs = Vec::with_capacity(n_theta * n_phi);
        for &(ct, wt) in gauss_legendre(n_theta).iter() {
            let st = (1.0 - ct * ct).max(0.0).sqrt();
            for k in 0..n_phi {
                let phi = (k as f64 + 0.5) * dphi;
                dirs.push((Vec3::new(st * phi.cos(), st * phi.sin(), ct), wt * dphi));
            }
        }
        let jobs: Vec<(usize, f64, f64)> = (0..nc)
            .flat_map(|i| radial.iter().map(move |&(r, w)| (i, r, w)))
            .collect();
        let points: Vec<(Vec3, f64)> = jobs
            .par_iter()
            .map(|&(i, r, wr)| {
                let mut shell = Vec::with_capacity(dirs.len());
                for (d, wa) in &dirs {
                    let p = centers[i] + d * r;
                    let cw = if nc == 1 { 1.0 } else { cell_weight(&p, i, &centers, &inv_dist, sharpness) };
                    let w = cw * wr * r * r * wa;
                    if w != 0.0 {
                        shell.push((p, w));
                    }
                }
                shell
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `∫ f dv`, reduced in a fixed order independent of the thread count.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&Vec3) -> f64 + Sync,
    {
        let partial: Vec<f64> = self
            .points
            .par_chunks(CHUNK)
            .map(|chunk| chunk.iter().map(|(p, w)| w * f(p)).sum::<f64>())
            .collect();
        partial.iter().sum()
    }

    /// `∫ f_k dv` for `k < n_out`; `f` writes all components at a point.
    pub fn integrate_batch<F>(&self, n_out: usize, f: F) -> Vec<f64>
    where
        F: Fn(&Vec3, &mut [f64]) + Sync,
    {
        let partial: Vec<Vec<f64>> = self
            .points
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut acc = vec![0.0; n_out];
                let mut buf = vec![0.0; n_out];
                for (p, w) in chunk {
                    f(p, &mut buf);
                    for (a, b) in acc.iter_mut().zip(&buf) {
                        *a += w * b;
                    }
                }
                acc
            })
            .collect();
        let mut total = vec![0.0; n_out];
        for part in &partial {
            for (t, v) in total.iter_mut().zip(part) {
                *t += v;
            }
        }
        total
    }
}

/// `∫ f dv` over all space, refined until successive levels agree within
/// `target_tol` (absolute, or relative for values above one).
pub fn integrate_3d<F>(f: F, centers: &[Vec3], cfg: &OracleConfig) -> Result<OracleResult>
where
    F: Fn(&Vec3) -> f64 + Sync,
{
    let mut prev: Option<f64> = None;
    let mut evaluations = 0u64;
    let mut diff = f64::INFINITY;
    for level in 0..cfg.max_levels.max(2) {
        let grid = Grid3d::build(centers, cfg, level);
        evaluations += grid.len() as u64;
        let value = grid.integrate(&f);
        if !value.is_finite() {
            return Err(Error::Divergent(format!("3D quadrature produced {value}")));
        }
        if let Some(p) = prev {
            diff = (value - p).abs();
            if diff <= cfg.target_tol * value.abs().max(1.0) {
                return Ok(OracleResult { value, error_estimate: diff, evaluations, warning: None });
            }
        }
        prev = Some(value);
    }
    Err(Error::Convergence { what: "3D quadrature".into(), best: prev.unwrap_or(f64::NAN), estimate: diff })
}

/// Vector-valued [`integrate_3d`]; the error estimate is the largest
/// component difference between the last two levels.
pub fn integrate_3d_batch<F>(f: F, n_out: usize, centers: &[Vec3], cfg: &OracleConfig) -> Result<(Vec<f64>, OracleResult)>
where
    F: Fn(&Vec3, &mut [f64]) + Sync,
{
    let mut prev: Option<Vec<f64>> = None;
    let mut evaluations = 0u64;
    let mut diff = f64::INFINITY;
    for level in 0..cfg.max_levels.max(2) {
        let grid = Grid3d::build(centers, cfg, level);
        evaluations += grid.len() as u64;
        let values = grid.integrate_batch(n_out, &f);
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergent("3D quadrature produced a non-finite component".into()));
        }
        let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        if let Some(p) = &prev {
            diff = values.iter().zip(p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if diff <= cfg.target_tol * scale {
                let summary = OracleResult { value: scale, error_estimate: diff, evaluations, warning: None };
                return Ok((values, summary));
            }
        }
        prev = Some(values);
    }
    Err(Error::Convergence { what: "batched 3D quadrature".into(), best: f64::NAN, estimate: diff })
}
