//! Two-center quadrature in prolate spheroidal coordinates.
//!
//! With foci `a`, `b` at distance `R`: `r_a = R(λ+μ)/2`, `r_b = R(λ-μ)/2`,
//! `dV = (R/2)^3 (λ^2 - μ^2) dλ dμ dφ`. The Jacobian vanishes at both foci,
//! which absorbs the `r^{n*-1}` and `r^{μ*-1}` singularities there.
//! Integrands are evaluated in the laboratory frame, so any orientation of
//! the two centers is accepted. Functions centered on the axis depend on `φ`
//! only through a finite Fourier sum, which the uniform `φ` grid integrates
//! exactly once it has more nodes than the total angular degree.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::OracleResult;
use crate::basis::StoParams;
use crate::math::quadrature::{flattened_interval, gauss_legendre};
use crate::{Error, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpheroidalConfig {
    pub n_lambda: usize,
    pub n_mu: usize,
    /// Relative agreement required between the base and refined rules.
    pub target_tol: f64,
}

impl Default for SpheroidalConfig {
    fn default() -> Self {
        Self { n_lambda: 64, n_mu: 48, target_tol: 1e-10 }
    }
}

struct Frame {
    mid: Vec3,
    axis: Vec3,
    e1: Vec3,
    e2: Vec3,
    half: f64,
}

impl Frame {
    fn new(a: &Vec3, b: &Vec3) -> Result<Self> {
        let d = b - a;
        let r = d.norm();
        if !(r > 1e-12) {
            return Err(Error::Domain("spheroidal quadrature needs two distinct centers".into()));
        }
        let axis = d / r;
        let trial = if axis.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
        let e1 = (trial - axis * axis.dot(&trial)).normalize();
        let e2 = axis.cross(&e1);
        Ok(Self { mid: (a + b) * 0.5, axis, e1, e2, half: 0.5 * r })
    }
}

/// Point/weight list for given orders; `decay` is the total exponential
/// decay rate of the integrand along the axis direction (e.g. `ζ_a + ζ_b`).
fn nodes(frame: &Frame, decay: f64, n_l: usize, n_m: usize, n_phi: usize) -> Vec<(Vec3, f64)> {
    let h = frame.half;
    let s = (1.0 / (decay.max(1e-3) * h)).clamp(1e-3, 1e9);
    let lam: Vec<(f64, f64)> = gauss_legendre(n_l)
        .iter()
        .map(|&(x, w)| {
            let t = 0.5 * (x + 1.0);
            let u = t * t;
            let lam = 1.0 + s * u / (1.0 - u);
            let dl = s / ((1.0 - u) * (1.0 - u)) * 2.0 * t * 0.5;
            (lam, w * dl)
        })
        .collect();
    let mu = flattened_interval(n_m, 2);
    let dphi = 2.0 * PI / n_phi as f64;
    let trig: Vec<(f64, f64)> = (0..n_phi)
        .map(|k| {
            let phi = (k as f64 + 0.25) * dphi;
            (phi.cos(), phi.sin())
        })
        .collect();
    let mut out = Vec::with_capacity(n_l * n_m * n_phi);
    for &(l, wl) in &lam {
        for &(m, wm) in &mu {
            let rho = h * ((l * l - 1.0) * (1.0 - m * m)).max(0.0).sqrt();
            let base = frame.mid + frame.axis * (h * l * m);
            let w = h * h * h * (l * l - m * m) * wl * wm * dphi;
            for &(c, sn) in &trig {
                out.push((base + (frame.e1 * c + frame.e2 * sn) * rho, w));
            }
        }
    }
    out
}

fn sum_batch<F>(pts: &[(Vec3, f64)], n_out: usize, f: &F) -> Vec<f64>
where
    F: Fn(&Vec3, &mut [f64]) + Sync,
{
    let partial: Vec<Vec<f64>> = pts
        .par_chunks(1024)
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

/// Vector-valued two-center integral. `angular_degree` bounds the summed
/// angular momenta of the factors and fixes the `φ` grid.
pub fn integrate_two_center_batch<F>(
    a: &Vec3,
    b: &Vec3,
    decay: f64,
    angular_degree: usize,
    n_out: usize,
    f: F,
    cfg: &SpheroidalConfig,
) -> Result<(Vec<f64>, OracleResult)>
where
    F: Fn(&Vec3, &mut [f64]) + Sync,
{
    let frame = Frame::new(a, b)?;
    let n_phi = angular_degree + 2;
    let coarse = nodes(&frame, decay, cfg.n_lambda, cfg.n_mu, n_phi);
    let fine = nodes(&frame, decay, cfg.n_lambda * 3 / 2, cfg.n_mu * 3 / 2, n_phi);
    let v0 = sum_batch(&coarse, n_out, &f);
    let v1 = sum_batch(&fine, n_out, &f);
    if v1.iter().any(|v| !v.is_finite()) {
        return Err(Error::Divergent("spheroidal quadrature produced a non-finite value".into()));
    }
    let scale = v1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = v0.iter().zip(&v1).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let warning = (diff > cfg.target_tol * scale.max(1e-300))
        .then(|| format!("spheroidal refinement difference {diff:e} exceeds tolerance"));
    let summary = OracleResult {
        value: scale,
        error_estimate: diff,
        evaluations: (coarse.len() + fine.len()) as u64,
        warning,
    };
    Ok((v1, summary))
}

/// Scalar two-center integral of a laboratory-frame integrand.
pub fn integrate_two_center<F>(
    a: &Vec3,
    b: &Vec3,
    decay: f64,
    angular_degree: usize,
    f: F,
    cfg: &SpheroidalConfig,
) -> Result<OracleResult>
where
    F: Fn(&Vec3) -> f64 + Sync,
{
    let (v, mut summary) = integrate_two_center_batch(a, b, decay, angular_degree, 1, |x, out| out[0] = f(x), cfg)?;
    summary.value = v[0];
    Ok(summary)
}

/// `⟨χ_p | χ_q⟩` for orbitals on two distinct centers.
pub fn overlap_two_center_spheroidal(p: &StoParams, q: &StoParams, cfg: &SpheroidalConfig) -> Result<OracleResult> {
    if (p.center - q.center).norm() <= 1e-12 {
        return Err(Error::Domain(
            "coincident centers: use the same-center inner product instead of spheroidal quadrature".into(),
        ));
    }
    integrate_two_center(
        &p.center,
        &q.center,
        p.zeta + q.zeta,
        (p.index.l + q.index.l) as usize,
        |x| p.value(x) * q.value(x),
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn s1(z: f64, c: Vec3) -> StoParams {
        StoParams::at(1.0, 0, 0, z, c).unwrap()
    }

    #[test]
    fn hydrogen_overlap_closed_form() {
        // S(R) = e^{-R} (1 + R + R^2/3) for two 1s, ζ = 1
        let cfg = SpheroidalConfig::default();
        for &r in &[0.5, 2.0, 5.0] {
            let a = Vec3::new(0.1, -0.3, 0.2);
            let b = a + Vec3::new(0.3, 0.4, -0.2).normalize() * r;
            let s = overlap_two_center_spheroidal(&s1(1.0, a), &s1(1.0, b), &cfg).unwrap();
            let exact = (-r).exp() * (1.0 + r + r * r / 3.0);
            assert_relative_eq!(s.value, exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn far_apart_and_nearby_limits() {
        let cfg = SpheroidalConfig::default();
        let s = overlap_two_center_spheroidal(&s1(1.0, Vec3::zeros()), &s1(1.0, Vec3::new(0.0, 0.0, 20.0)), &cfg).unwrap();
        assert!(s.value < 1e-6);
        let s = overlap_two_center_spheroidal(&s1(1.0, Vec3::zeros()), &s1(1.0, Vec3::new(0.0, 0.0, 1e-4)), &cfg).unwrap();
        assert_relative_eq!(s.value, 1.0, epsilon = 1e-7);
        assert!(overlap_two_center_spheroidal(&s1(1.0, Vec3::zeros()), &s1(2.0, Vec3::zeros()), &cfg).is_err());
    }

    #[test]
    fn coulomb_attraction_of_1s_cloud() {
        // ∫ |1s|^2 / |r - R| = 1/R - e^{-2R}(1 + 1/R)
        let cfg = SpheroidalConfig::default();
        let p = s1(1.0, Vec3::zeros());
        let g = Vec3::new(0.0, 1.5, 0.0);
        let v = integrate_two_center(&p.center, &g, 2.0, 0, |x| p.value(x).powi(2) / (x - g).norm(), &cfg).unwrap();
        let r: f64 = 1.5;
        assert_relative_eq!(v.value, 1.0 / r - (-2.0 * r).exp() * (1.0 + 1.0 / r), max_relative = 1e-12);
    }
}
