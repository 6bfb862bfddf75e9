//! Real and complex spherical harmonics `S_lm = P̄_l|m|(cos θ) Φ_m(φ)`.
//!
//! Complex harmonics use `Φ_m = e^{imφ} / sqrt(2π)` with no Condon-Shortley
//! factor, so `Y*_lm = Y_l,-m` holds exactly. Real harmonics use
//! `Φ_m = cos(|m|φ) / sqrt(π (1 + δ_m0))` for `m >= 0` and
//! `sin(|m|φ) / sqrt(π)` for `m < 0`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::legendre::{fill_table, pl_index};
use crate::{Error, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum HarmonicKind {
    #[default]
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AngularIndex {
    pub l: u32,
    pub m: i32,
}

impl AngularIndex {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::InvalidIndex(format!("|m| = {} exceeds l = {l}", m.abs())));
        }
        Ok(Self { l, m })
    }
}

/// Flat index of `(l, m)` in a table covering all `l <= lmax`.
#[inline]
pub fn lm_index(l: usize, m: i64) -> usize {
    ((l * l + l) as i64 + m) as usize
}

/// Number of `(l, m)` pairs with `l <= lmax`.
#[inline]
pub fn lm_count(lmax: usize) -> usize {
    (lmax + 1) * (lmax + 1)
}

/// Evaluates all real harmonics up to a fixed `lmax` at arbitrary directions.
#[derive(Debug, Clone)]
pub struct RealHarmonics {
    lmax: usize,
    legendre: Vec<f64>,
    values: Vec<f64>,
}

impl RealHarmonics {
    pub fn new(lmax: usize) -> Self {
        Self {
            lmax,
            legendre: vec![0.0; pl_index(lmax, lmax) + 1],
            values: vec![0.0; lm_count(lmax)],
        }
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    /// Values `S_lm(r̂)` at the direction of `v`, indexed by [`lm_index`].
    /// The zero vector is treated as the +z direction.
    pub fn eval(&mut self, v: &Vec3) -> &[f64] {
        let (x, y, z) = (v.x, v.y, v.z);
        let rho2 = x * x + y * y;
        let r = (rho2 + z * z).sqrt();
        let (ct, st) = if r > 0.0 { (z / r, rho2.sqrt() / r) } else { (1.0, 0.0) };
        let (cp, sp) = if rho2 > 0.0 {
            let rho = rho2.sqrt();
            (x / rho, y / rho)
        } else {
            (1.0, 0.0)
        };
        self.fill(ct, st, cp, sp);
        &self.values
    }

    /// Same as [`eval`](Self::eval) with explicit spherical angles.
    pub fn eval_angles(&mut self, theta: f64, phi: f64) -> &[f64] {
        self.fill(theta.cos(), theta.sin().abs(), phi.cos(), phi.sin());
        &self.values
    }

    fn fill(&mut self, ct: f64, st: f64, cp: f64, sp: f64) {
        let lmax = self.lmax;
        fill_table(lmax, ct, st, &mut self.legendre);
        let inv_sqrt_pi = 1.0 / PI.sqrt();
        let inv_sqrt_2pi = 1.0 / (2.0 * PI).sqrt();
        let (mut cm, mut sm) = (1.0, 0.0);
        for m in 0..=lmax {
            if m > 0 {
                let c = cm * cp - sm * sp;
                sm = sm * cp + cm * sp;
                cm = c;
            }
            for l in m..=lmax {
                let p = self.legendre[pl_index(l, m)];
                let base = l * l + l;
                if m == 0 {
                    self.values[base] = p * inv_sqrt_2pi;
                } else {
                    self.values[base + m] = p * cm * inv_sqrt_pi;
                    self.values[base - m] = p * sm * inv_sqrt_pi;
                }
            }
        }
    }
}

/// Single real harmonic `S_lm` at the direction of `v` (zero vector taken as
/// +z). Cheaper than a full [`RealHarmonics`] table when only one is needed.
pub fn real_harmonic(l: usize, m: i64, v: &Vec3) -> f64 {
    let am = m.unsigned_abs() as usize;
    debug_assert!(am <= l);
    let rho2 = v.x * v.x + v.y * v.y;
    let r = (rho2 + v.z * v.z).sqrt();
    let (x, s) = if r > 0.0 { (v.z / r, rho2.sqrt() / r) } else { (1.0, 0.0) };
    let mut pmm = FRAC_1_SQRT_2;
    for k in 1..=am {
        pmm *= ((2 * k + 1) as f64 / (2 * k) as f64).sqrt() * s;
    }
    let p = if l == am {
        pmm
    } else {
        let mut p_prev = pmm;
        let mut p_cur = ((2 * am + 3) as f64).sqrt() * x * pmm;
        let mf = am as f64;
        for ll in (am + 2)..=l {
            let lf = ll as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
            let p_next = a * (x * p_cur - b * p_prev);
            p_prev = p_cur;
            p_cur = p_next;
        }
        p_cur
    };
    if am == 0 {
        return p / (2.0 * PI).sqrt();
    }
    let (cp, sp) = if rho2 > 0.0 {
        let rho = rho2.sqrt();
        (v.x / rho, v.y / rho)
    } else {
        (1.0, 0.0)
    };
    let (mut cm, mut sm) = (1.0, 0.0);
    for _ in 0..am {
        let c = cm * cp - sm * sp;
        sm = sm * cp + cm * sp;
        cm = c;
    }
    let phi = if m > 0 { cm } else { sm };
    p * phi / PI.sqrt()
}

/// `S_lm(θ, φ)` of the requested kind. Real harmonics are returned with zero
/// imaginary part.
pub fn sph_harm(l: u32, m: i32, theta: f64, phi: f64, kind: HarmonicKind) -> Result<Complex64> {
    AngularIndex::new(l, m)?;
    let am = m.unsigned_abs() as usize;
    let p = super::legendre::legendre_norm(l as usize, am as i64, theta.cos().clamp(-1.0, 1.0))?;
    let p = if theta.sin() < 0.0 && am % 2 == 1 { -p } else { p };
    Ok(match kind {
        HarmonicKind::Complex => {
            Complex64::from_polar(1.0, m as f64 * phi) * (p / (2.0 * PI).sqrt())
        }
        HarmonicKind::Real => {
            let v = if m > 0 {
                p * (am as f64 * phi).cos() / PI.sqrt()
            } else if m == 0 {
                p / (2.0 * PI).sqrt()
            } else {
                p * (am as f64 * phi).sin() / PI.sqrt()
            };
            Complex64::new(v, 0.0)
        }
    })
}

/// Expansion of the complex harmonic `Y_lm` over real harmonics of the same
/// `l`: returns `(m', c)` pairs with `Y_lm = Σ c S_lm'`.
pub fn complex_in_real(m: i32) -> Vec<(i32, Complex64)> {
    let h = FRAC_1_SQRT_2;
    match m.cmp(&0) {
        std::cmp::Ordering::Equal => vec![(0, Complex64::new(1.0, 0.0))],
        std::cmp::Ordering::Greater => vec![(m, Complex64::new(h, 0.0)), (-m, Complex64::new(0.0, h))],
        std::cmp::Ordering::Less => vec![(-m, Complex64::new(h, 0.0)), (m, Complex64::new(0.0, -h))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::quadrature::gauss_legendre;
    use approx::assert_relative_eq;

    #[test]
    fn single_harmonic_matches_table() {
        let mut table = RealHarmonics::new(7);
        for v in [Vec3::new(0.3, -1.2, 0.7), Vec3::new(-2.0, 0.1, -0.4), Vec3::new(0.0, 0.0, 1.0)] {
            let vals = table.eval(&v).to_vec();
            for l in 0..=7usize {
                for m in -(l as i64)..=(l as i64) {
                    assert_relative_eq!(real_harmonic(l, m, &v), vals[lm_index(l, m)], epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn reference_values() {
        let s00 = sph_harm(0, 0, 0.4, 1.1, HarmonicKind::Real).unwrap().re;
        assert_relative_eq!(s00, 0.282_094_791_773_878_14, epsilon = 1e-15);
        let s10 = sph_harm(1, 0, 0.0, 0.0, HarmonicKind::Real).unwrap().re;
        assert_relative_eq!(s10, 0.488_602_511_902_919_9, epsilon = 1e-15);
        let y11 = sph_harm(1, 1, PI / 2.0, 0.0, HarmonicKind::Complex).unwrap();
        assert_relative_eq!(y11.re, 0.345_494_149_471_335_5, epsilon = 1e-15);
        assert_relative_eq!(y11.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn conjugation_rule_without_phase() {
        for l in 0..6u32 {
            for m in -(l as i32)..=(l as i32) {
                for &(t, p) in &[(0.3, 0.2), (1.9, -2.5), (2.8, 4.0)] {
                    let a = sph_harm(l, m, t, p, HarmonicKind::Complex).unwrap().conj();
                    let b = sph_harm(l, -m, t, p, HarmonicKind::Complex).unwrap();
                    assert!((a - b).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn batch_matches_pointwise() {
        let mut h = RealHarmonics::new(7);
        let v = Vec3::new(0.3, -1.2, 0.7);
        let r = v.norm();
        let theta = (v.z / r).acos();
        let phi = v.y.atan2(v.x);
        let vals = h.eval(&v).to_vec();
        for l in 0..=7u32 {
            for m in -(l as i32)..=(l as i32) {
                let s = sph_harm(l, m, theta, phi, HarmonicKind::Real).unwrap().re;
                assert_relative_eq!(vals[lm_index(l as usize, m as i64)], s, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn complex_from_real_combination() {
        let mut h = RealHarmonics::new(4);
        let (t, p) = (1.1, 0.7);
        let vals = h.eval_angles(t, p).to_vec();
        for l in 0..=4u32 {
            for m in -(l as i32)..=(l as i32) {
                let y = sph_harm(l, m, t, p, HarmonicKind::Complex).unwrap();
                let recon: Complex64 = complex_in_real(m)
                    .into_iter()
                    .map(|(mr, c)| c * vals[lm_index(l as usize, mr as i64)])
                    .sum();
                assert!((y - recon).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn sphere_orthonormality() {
        let lmax = 6;
        let nt = 16;
        let np = 32;
        let rule = gauss_legendre(nt);
        let mut h = RealHarmonics::new(lmax);
        let n = lm_count(lmax);
        let mut gram = vec![0.0; n * n];
        for &(x, w) in rule.iter() {
            for k in 0..np {
                let phi = 2.0 * PI * k as f64 / np as f64;
                let vals = h.eval_angles(x.acos(), phi);
                let wt = w * 2.0 * PI / np as f64;
                for i in 0..n {
                    for j in 0..n {
                        gram[i * n + j] += wt * vals[i] * vals[j];
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i * n + j] - expect).abs() < 1e-12);
            }
        }
    }
}
