//! Molecules as nuclei plus occupied molecular orbitals over a Slater basis,
//! and the potential they produce:
//! `φ(g) = Σ_b Z_b h(g - R_b) - 2 Σ_i f_i h_i(g)`, `h_i(g) = ∫ |u_i|^2 h(g - r) dv`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{kernel_value, Density, KernelIndex, StoParams};
use crate::integrals::{overlap_nisto, IntegralEngine};
use crate::math::harmonics::complex_in_real;
use crate::math::HarmonicKind;
use crate::oracle::SpheroidalConfig;
use crate::{Error, Result, Vec3};

/// Tolerance on `⟨u_i|u_i⟩ = 1` at load time.
pub const NORMALIZATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Nucleus {
    pub charge: f64,
    pub position: Vec3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MolecularOrbital {
    pub coefficients: Vec<f64>,
    pub occupancy: f64,
}

/// A validated molecule. Basis functions and MO coefficients are stored as
/// given; for complex harmonics each MO is also kept as real and imaginary
/// coefficient vectors over the real-harmonic basis, so that
/// `|u|^2 = (Σ a_p χ_p)^2 + (Σ b_p χ_p)^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Molecule {
    pub name: String,
    pub nuclei: Vec<Nucleus>,
    pub basis: Vec<StoParams>,
    pub basis_centers: Vec<usize>,
    pub orbitals: Vec<MolecularOrbital>,
    pub harmonics: HarmonicKind,
    real_basis: Vec<StoParams>,
    real_coefficients: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialSample {
    pub point: Vec3,
    pub kernel: KernelIndex,
    pub xi: f64,
    pub nuclear_part: f64,
    pub electronic_part: f64,
    pub total: f64,
    pub warnings: Vec<String>,
}

/// A contracted sum of integrals with merged diagnostics.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Contraction {
    pub value: f64,
    /// Sum of `|weight| · error estimate` over the terms.
    pub error_estimate: f64,
    pub warnings: Vec<String>,
}

impl Contraction {
    pub fn add(&mut self, weight: f64, value: f64, error: Option<f64>, warnings: &[String]) {
        self.value += weight * value;
        self.error_estimate += weight.abs() * error.unwrap_or(0.0);
        for w in warnings {
            if !self.warnings.contains(w) {
                self.warnings.push(w.clone());
            }
        }
    }

    pub fn merge(&mut self, weight: f64, other: &Contraction) {
        self.add(weight, other.value, Some(other.error_estimate), &other.warnings);
    }
}

/// Uniform box grid `[min, max]` with `counts` points per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: Vec3,
    pub max: Vec3,
    pub counts: [usize; 3],
}

impl GridSpec {
    pub fn points(&self) -> Vec<Vec3> {
        let axis = |i: usize| -> Vec<f64> {
            let n = self.counts[i];
            (0..n)
                .map(|k| if n == 1 { self.min[i] } else { self.min[i] + (self.max[i] - self.min[i]) * k as f64 / (n - 1) as f64 })
                .collect()
        };
        let (xs, ys, zs) = (axis(0), axis(1), axis(2));
        let mut out = Vec::with_capacity(xs.len() * ys.len() * zs.len());
        for &x in &xs {
            for &y in &ys {
                for &z in &zs {
                    out.push(Vec3::new(x, y, z));
                }
            }
        }
        out
    }
}

fn to_real(basis: &[StoParams], coeffs: &[f64], kind: HarmonicKind) -> (Vec<StoParams>, Vec<Vec<f64>>) {
    match kind {
        HarmonicKind::Real => (basis.to_vec(), vec![coeffs.to_vec()]),
        HarmonicKind::Complex => {
            // real basis: each complex function contributes S_{l,|m|} and S_{l,-|m|}
            let mut real = Vec::new();
            let mut re = Vec::new();
            let mut im = Vec::new();
            for (p, &c) in basis.iter().zip(coeffs) {
                for (m, w) in complex_in_real(p.index.m) {
                    let mut q = *p;
                    q.index.m = m;
                    let pos = real.iter().position(|x: &StoParams| x == &q).unwrap_or_else(|| {
                        real.push(q);
                        re.push(0.0);
                        im.push(0.0);
                        real.len() - 1
                    });
                    re[pos] += c * w.re;
                    im[pos] += c * w.im;
                }
            }
            (real, vec![re, im])
        }
    }
}

impl Molecule {
    /// Validate and assemble. With `renormalize`, MOs off by more than the
    /// tolerance are rescaled instead of rejected.
    pub fn new(
        name: impl Into<String>,
        nuclei: Vec<Nucleus>,
        basis: Vec<StoParams>,
        basis_centers: Vec<usize>,
        mut orbitals: Vec<MolecularOrbital>,
        harmonics: HarmonicKind,
        renormalize: bool,
    ) -> Result<Self> {
        for (i, n) in nuclei.iter().enumerate() {
            if !(n.charge > 0.0 && n.charge.is_finite()) {
                return Err(Error::Validation(format!("nucleus {i}: charge {} must be positive", n.charge)));
            }
        }
        if basis_centers.len() != basis.len() {
            return Err(Error::Validation("one center index per basis function is required".into()));
        }
        for (k, &c) in basis_centers.iter().enumerate() {
            let nucleus = nuclei.get(c).ok_or_else(|| Error::Validation(format!("basis[{k}]: center index {c} has no nucleus")))?;
            if (nucleus.position - basis[k].center).norm() > 1e-12 {
                return Err(Error::Validation(format!("basis[{k}]: center does not match nucleus {c}")));
            }
        }
        let cfg = SpheroidalConfig::default();
        let mut real_basis: Vec<StoParams> = Vec::new();
        let mut real_coefficients = Vec::with_capacity(orbitals.len());
        for (i, mo) in orbitals.iter_mut().enumerate() {
            if mo.coefficients.len() != basis.len() {
                return Err(Error::Validation(format!(
                    "mos[{i}]: {} coefficients for {} basis functions",
                    mo.coefficients.len(),
                    basis.len()
                )));
            }
            if !(mo.occupancy > 0.0 && mo.occupancy <= 1.0) {
                return Err(Error::Validation(format!("mos[{i}]: occupancy {} outside (0, 1]", mo.occupancy)));
            }
            let (rb, rc) = to_real(&basis, &mo.coefficients, harmonics);
            let norm = gram_norm(&rb, &rc, &cfg)?;
            if (norm - 1.0).abs() > NORMALIZATION_TOL {
                if !renormalize {
                    return Err(Error::Validation(format!("mos[{i}]: <u|u> = {norm:.9} differs from 1 by more than {NORMALIZATION_TOL:e}")));
                }
                let s = 1.0 / norm.sqrt();
                mo.coefficients.iter_mut().for_each(|c| *c *= s);
            }
            // common real basis across MOs
            let mut vecs = Vec::new();
            let (rb, rc) = to_real(&basis, &mo.coefficients, harmonics);
            for comp in &rc {
                let mut v = vec![0.0; real_basis.len()];
                for (p, &c) in rb.iter().zip(comp) {
                    let pos = real_basis.iter().position(|x| x == p).unwrap_or_else(|| {
                        real_basis.push(*p);
                        real_basis.len() - 1
                    });
                    if pos >= v.len() {
                        v.resize(pos + 1, 0.0);
                    }
                    v[pos] += c;
                }
                vecs.push(v);
            }
            real_coefficients.push(vecs);
        }
        for vecs in &mut real_coefficients {
            for v in vecs.iter_mut() {
                v.resize(real_basis.len(), 0.0);
            }
        }
        Ok(Self { name: name.into(), nuclei, basis, basis_centers, orbitals, harmonics, real_basis, real_coefficients })
    }

    /// A bare set of nuclei without electrons.
    pub fn nuclei_only(name: impl Into<String>, nuclei: Vec<Nucleus>) -> Result<Self> {
        Self::new(name, nuclei, vec![], vec![], vec![], HarmonicKind::Real, false)
    }

    pub fn n_closed(&self) -> usize {
        self.orbitals.iter().filter(|o| o.occupancy == 1.0).count()
    }

    pub fn n_open(&self) -> usize {
        self.orbitals.len() - self.n_closed()
    }

    /// `N = 2 Σ f_i`.
    pub fn electron_count(&self) -> f64 {
        2.0 * self.orbitals.iter().map(|o| o.occupancy).sum::<f64>()
    }

    pub fn nuclear_charge(&self) -> f64 {
        self.nuclei.iter().map(|n| n.charge).sum()
    }

    pub fn centroid(&self) -> Vec3 {
        if self.nuclei.is_empty() {
            return Vec3::zeros();
        }
        self.nuclei.iter().map(|n| n.position).sum::<Vec3>() / self.nuclei.len() as f64
    }

    pub fn max_zeta(&self) -> f64 {
        self.basis.iter().map(|p| p.zeta).fold(0.0, f64::max)
    }

    /// Rigid motion `r -> rot · r + shift` of nuclei and basis centers.
    pub fn transformed(&self, rot: &nalgebra::Matrix3<f64>, shift: &Vec3) -> Result<Self> {
        if self.basis.iter().any(|p| p.index.l > 0) && (rot - nalgebra::Matrix3::identity()).norm() > 1e-14 {
            return Err(Error::Unsupported("rotating orbitals with l > 0 requires rotating the MO coefficients".into()));
        }
        let map = |x: &Vec3| rot * x + shift;
        let nuclei = self.nuclei.iter().map(|n| Nucleus { charge: n.charge, position: map(&n.position) }).collect();
        let basis = self.basis.iter().map(|p| StoParams { center: map(&p.center), ..*p }).collect();
        Self::new(self.name.clone(), nuclei, basis, self.basis_centers.clone(), self.orbitals.clone(), self.harmonics, false)
    }

    /// Weighted orbital-product terms of `|u_i|^2`, all ordered pairs.
    pub fn mo_density_terms(&self, i: usize) -> Result<Density> {
        let vecs = self
            .real_coefficients
            .get(i)
            .ok_or_else(|| Error::Domain(format!("orbital index {i} out of range ({} orbitals)", self.orbitals.len())))?;
        let mut terms = Vec::new();
        for v in vecs {
            for (p, &cp) in v.iter().enumerate() {
                for (q, &cq) in v.iter().enumerate() {
                    if cp * cq != 0.0 {
                        terms.push((cp * cq, self.real_basis[p], self.real_basis[q]));
                    }
                }
            }
        }
        Ok(Density { terms })
    }

    /// Same terms with symmetric pairs merged (`p <= q`, off-diagonal doubled).
    fn symmetric_terms(&self, i: usize) -> Result<Vec<(f64, StoParams, StoParams)>> {
        let vecs = &self.real_coefficients[i];
        let mut out = Vec::new();
        let n = self.real_basis.len();
        for p in 0..n {
            for q in p..n {
                let w: f64 = vecs.iter().map(|v| v[p] * v[q]).sum::<f64>() * if p == q { 1.0 } else { 2.0 };
                if w != 0.0 {
                    out.push((w, self.real_basis[p], self.real_basis[q]));
                }
            }
        }
        if vecs.is_empty() {
            return Err(Error::Domain(format!("orbital {i} has no coefficients")));
        }
        Ok(out)
    }

    /// `f_i`-weighted electron density `Σ_i 2 f_i |u_i|^2`.
    pub fn electron_density(&self) -> Result<Density> {
        let mut terms = Vec::new();
        for (i, mo) in self.orbitals.iter().enumerate() {
            for (w, a, b) in self.symmetric_terms(i)? {
                terms.push((2.0 * mo.occupancy * w, a, b));
            }
        }
        Ok(Density { terms })
    }
}

fn gram_norm(basis: &[StoParams], comps: &[Vec<f64>], cfg: &SpheroidalConfig) -> Result<f64> {
    let n = basis.len();
    let mut total = 0.0;
    for p in 0..n {
        for q in p..n {
            let w: f64 = comps.iter().map(|v| v[p] * v[q]).sum();
            if w == 0.0 {
                continue;
            }
            let s = overlap_nisto(&basis[p], &basis[q], cfg)?.value;
            total += if p == q { w * s } else { 2.0 * w * s };
        }
    }
    Ok(total)
}

/// `h_i(g) = ∫ |u_i(r)|^2 h(g - r) dv = (-1)^ν Σ C C' Λ^{acg}`.
pub fn h_i_matrix_element(mol: &Molecule, i: usize, q: &KernelIndex, xi: f64, g: &Vec3, engine: &IntegralEngine) -> Result<Contraction> {
    if i >= mol.orbitals.len() {
        return Err(Error::Domain(format!("orbital index {i} out of range ({} orbitals)", mol.orbitals.len())));
    }
    let sign = if q.nu % 2 == 0 { 1.0 } else { -1.0 };
    let mut out = Contraction::default();
    for (w, a, b) in mol.symmetric_terms(i)? {
        let v = engine.lambda(&a, &b, q, xi, g)?;
        out.add(sign * w, v.value, v.error_estimate, &v.warnings);
    }
    Ok(out)
}

/// Nuclear part `Σ_b Z_b h(g - R_b)`.
pub fn nuclear_potential(mol: &Molecule, q: &KernelIndex, xi: f64, g: &Vec3) -> Result<f64> {
    let mut total = 0.0;
    for n in &mol.nuclei {
        let d = g - n.position;
        if d.norm() <= 1e-12 && q.mu_star < 1.0 {
            return Err(Error::Singular { what: format!("kernel (mu* = {}) at a nucleus", q.mu_star) });
        }
        total += n.charge * kernel_value(q, xi, &d);
    }
    Ok(total)
}

/// Electronic part `2 Σ_i f_i h_i(g)`.
pub fn electronic_potential(mol: &Molecule, q: &KernelIndex, xi: f64, g: &Vec3, engine: &IntegralEngine) -> Result<Contraction> {
    let mut out = Contraction::default();
    for (i, mo) in mol.orbitals.iter().enumerate() {
        let h = h_i_matrix_element(mol, i, q, xi, g, engine)?;
        out.merge(2.0 * mo.occupancy, &h);
    }
    Ok(out)
}

pub fn potential_at(mol: &Molecule, g: &Vec3, q: &KernelIndex, xi: f64, engine: &IntegralEngine) -> Result<PotentialSample> {
    let nuclear = nuclear_potential(mol, q, xi, g)?;
    let el = electronic_potential(mol, q, xi, g, engine)?;
    Ok(PotentialSample {
        point: *g,
        kernel: *q,
        xi,
        nuclear_part: nuclear,
        electronic_part: el.value,
        total: nuclear - el.value,
        warnings: el.warnings,
    })
}

/// Potential at every point, evaluated concurrently; output order follows
/// the input order.
pub fn potential_grid(mol: &Molecule, points: &[Vec3], q: &KernelIndex, xi: f64, engine: &IntegralEngine) -> Result<Vec<PotentialSample>> {
    points.par_iter().map(|g| potential_at(mol, g, q, xi, engine)).collect()
}
