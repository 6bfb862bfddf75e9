//! Slater-type orbitals with noninteger principal index and Coulomb-Yukawa
//! interaction kernels.
//!
//! `χ(ζ, r) = N(n*, ζ) r^{n*-1} e^{-ζ r} S_lm(θ, φ)`,
//! `N(n*, ζ) = (2ζ)^{n*+1/2} / sqrt(Γ(2n*+1))`,
//! `h(ξ, r) = sqrt(4π / (2ν+1)) r^{μ*-1} e^{-ξ r} S_νσ(θ, φ)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::math::gamma::lgam;
use crate::math::{real_harmonic, sph_harm, HarmonicKind};
use crate::{Error, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitalIndex {
    pub n_star: f64,
    pub l: u32,
    pub m: i32,
}

impl OrbitalIndex {
    pub fn new(n_star: f64, l: u32, m: i32) -> Result<Self> {
        if !(n_star.is_finite() && n_star > 0.0) {
            return Err(Error::InvalidIndex(format!("principal index n* = {n_star} must be positive")));
        }
        if m.unsigned_abs() > l {
            return Err(Error::InvalidIndex(format!("|m| = {} exceeds l = {l}", m.abs())));
        }
        Ok(Self { n_star, l, m })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelIndex {
    pub mu_star: f64,
    pub nu: u32,
    pub sigma: i32,
}

impl KernelIndex {
    pub const COULOMB: KernelIndex = KernelIndex { mu_star: 0.0, nu: 0, sigma: 0 };

    pub fn new(mu_star: f64, nu: u32, sigma: i32) -> Result<Self> {
        if !mu_star.is_finite() {
            return Err(Error::InvalidIndex(format!("kernel index mu* = {mu_star} is not finite")));
        }
        if sigma.unsigned_abs() > nu {
            return Err(Error::InvalidIndex(format!("|sigma| = {} exceeds nu = {nu}", sigma.abs())));
        }
        Ok(Self { mu_star, nu, sigma })
    }

    /// `sqrt(4π / (2ν+1))`.
    pub fn prefactor(&self) -> f64 {
        (4.0 * PI / (2 * self.nu + 1) as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StoParams {
    pub index: OrbitalIndex,
    pub zeta: f64,
    pub center: Vec3,
}

impl StoParams {
    pub fn new(index: OrbitalIndex, zeta: f64, center: Vec3) -> Result<Self> {
        if !(zeta.is_finite() && zeta > 0.0) {
            return Err(Error::Domain(format!("orbital exponent zeta = {zeta} must be positive")));
        }
        Ok(Self { index, zeta, center })
    }

    /// Shorthand used heavily in tests and examples.
    pub fn at(n_star: f64, l: u32, m: i32, zeta: f64, center: Vec3) -> Result<Self> {
        Self::new(OrbitalIndex::new(n_star, l, m)?, zeta, center)
    }

    pub fn norm(&self) -> f64 {
        sto_norm(self.index.n_star, self.zeta)
    }

    /// Normalized radial factor `N r^{n*-1} e^{-ζ r}`.
    #[inline]
    pub fn radial(&self, r: f64) -> f64 {
        sto_radial(self.index.n_star, self.zeta, r)
    }

    /// Real-harmonic value at `point`; infinite at the center when `n* < 1`.
    #[inline]
    pub fn value(&self, point: &Vec3) -> f64 {
        let d = point - self.center;
        let r = d.norm();
        self.radial(r) * real_harmonic(self.index.l as usize, self.index.m as i64, &d)
    }

    pub fn translated(&self, shift: &Vec3) -> Self {
        Self { center: self.center + shift, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub index: KernelIndex,
    pub xi: f64,
    pub center: Vec3,
}

impl KernelParams {
    pub fn new(index: KernelIndex, xi: f64, center: Vec3) -> Result<Self> {
        if !(xi.is_finite() && xi >= 0.0) {
            return Err(Error::Domain(format!("kernel screening xi = {xi} must be nonnegative")));
        }
        Ok(Self { index, xi, center })
    }

    /// Value at `point`; infinite at the center when `μ* < 1`.
    #[inline]
    pub fn value(&self, point: &Vec3) -> f64 {
        let d = point - self.center;
        kernel_value(&self.index, self.xi, &d)
    }
}

/// `h(ξ, d)` for a displacement `d` from the kernel center.
#[inline]
pub fn kernel_value(q: &KernelIndex, xi: f64, d: &Vec3) -> f64 {
    let r = d.norm();
    let radial = r.powf(q.mu_star - 1.0) * (-xi * r).exp();
    if q.nu == 0 {
        // sqrt(4π) S_00 = 1
        radial
    } else {
        q.prefactor() * radial * real_harmonic(q.nu as usize, q.sigma as i64, d)
    }
}

/// `N(n*, ζ) = (2ζ)^{n*+1/2} / sqrt(Γ(2n*+1))`.
pub fn sto_norm(n_star: f64, zeta: f64) -> f64 {
    ((n_star + 0.5) * (2.0 * zeta).ln() - 0.5 * lgam(2.0 * n_star + 1.0)).exp()
}

#[inline]
pub fn sto_radial(n_star: f64, zeta: f64, r: f64) -> f64 {
    sto_norm(n_star, zeta) * r.powf(n_star - 1.0) * (-zeta * r).exp()
}

/// Orbital value with the requested harmonic kind.
pub fn sto_eval(p: &StoParams, point: &Vec3, kind: HarmonicKind) -> Result<Complex64> {
    let d = point - p.center;
    let r = d.norm();
    if r == 0.0 && p.index.n_star < 1.0 {
        return Err(Error::Singular { what: format!("orbital with n* = {}", p.index.n_star) });
    }
    match kind {
        HarmonicKind::Real => Ok(Complex64::new(p.value(point), 0.0)),
        HarmonicKind::Complex => {
            let theta = if r > 0.0 { (d.z / r).clamp(-1.0, 1.0).acos() } else { 0.0 };
            let phi = d.y.atan2(d.x);
            let y = sph_harm(p.index.l, p.index.m, theta, phi, HarmonicKind::Complex)?;
            Ok(y * p.radial(r))
        }
    }
}

/// Kernel value at `point`.
pub fn kernel_eval(q: &KernelParams, point: &Vec3) -> Result<f64> {
    let d = point - q.center;
    if d.norm() == 0.0 && q.index.mu_star < 1.0 {
        return Err(Error::Singular { what: format!("kernel with mu* = {}", q.index.mu_star) });
    }
    Ok(kernel_value(&q.index, q.xi, &d))
}

/// `∫ R_n(ζ, r) R_n'(ζ', r) r^2 dr` for normalized radial factors.
pub fn radial_overlap(n1: f64, z1: f64, n2: f64, z2: f64) -> f64 {
    let s = z1 + z2;
    // 1 + t = 2ζ / (ζ + ζ'), 1 - t = 2ζ' / (ζ + ζ')
    let log = lgam(n1 + n2 + 1.0) - 0.5 * lgam(2.0 * n1 + 1.0) - 0.5 * lgam(2.0 * n2 + 1.0)
        + (n1 + 0.5) * (2.0 * z1 / s).ln()
        + (n2 + 0.5) * (2.0 * z2 / s).ln();
    log.exp()
}

/// Inner product of two orbitals on a common center.
pub fn sto_inner_same_center(p: &OrbitalIndex, zeta: f64, q: &OrbitalIndex, zeta_q: f64) -> f64 {
    if p.l != q.l || p.m != q.m {
        return 0.0;
    }
    radial_overlap(p.n_star, zeta, q.n_star, zeta_q)
}

/// A real density `Σ_k w_k χ_a(k) χ_b(k)` of orbital products.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Density {
    pub terms: Vec<(f64, StoParams, StoParams)>,
}

impl Density {
    pub fn single(p: StoParams) -> Self {
        Self { terms: vec![(1.0, p, p)] }
    }

    #[inline]
    pub fn value(&self, point: &Vec3) -> f64 {
        self.terms.iter().map(|(w, a, b)| w * a.value(point) * b.value(point)).sum()
    }

    pub fn centers(&self) -> Vec<Vec3> {
        let mut out: Vec<Vec3> = Vec::new();
        for (_, a, b) in &self.terms {
            for c in [a.center, b.center] {
                if !out.iter().any(|x| (x - c).norm() < 1e-10) {
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn max_zeta(&self) -> f64 {
        self.terms.iter().map(|(_, a, b)| a.zeta.max(b.zeta)).fold(0.0, f64::max)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for t in &mut self.terms {
            t.0 *= factor;
        }
        self
    }
}
