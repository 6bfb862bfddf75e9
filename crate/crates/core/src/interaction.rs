//! Interaction energy of two molecules, `U = U1 + U2 + U3 + U4`:
//! nuclei-nuclei, electrons of A with nuclei of B, electrons of B with
//! nuclei of A, and electrons-electrons. Every term uses the kernel at the
//! displacement from the A-side particle to the B-side particle.

use serde::{Deserialize, Serialize};

use crate::addition::{expand_kernel_two_particle, KernelTable};
use crate::basis::{kernel_value, KernelIndex};
use crate::integrals::{IntegralConfig, IntegralEngine};
use crate::molecule::{electronic_potential, Contraction, Molecule};
use crate::oracle::{integrate_6d_mc, Grid3d, OracleConfig, TwoElectronIntegrand};
use crate::{Error, Result, Vec3};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub molecule_a: Molecule,
    pub molecule_b: Molecule,
    pub kernel: KernelIndex,
    pub xi: f64,
    /// Common origin for the two-particle kernel expansion; defaults to the
    /// midpoint of the two nuclear centroids.
    pub origin: Option<Vec3>,
}

impl Scene {
    pub fn new(molecule_a: Molecule, molecule_b: Molecule, kernel: KernelIndex, xi: f64) -> Result<Self> {
        if !(xi.is_finite() && xi >= 0.0) {
            return Err(Error::Domain(format!("kernel screening xi = {xi} must be nonnegative")));
        }
        Ok(Self { molecule_a, molecule_b, kernel, xi, origin: None })
    }

    pub fn with_origin(mut self, origin: Vec3) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn resolved_origin(&self) -> Vec3 {
        self.origin.unwrap_or_else(|| 0.5 * (self.molecule_a.centroid() + self.molecule_b.centroid()))
    }

    /// Roles of A and B exchanged (origin kept).
    pub fn swapped(&self) -> Self {
        Self {
            molecule_a: self.molecule_b.clone(),
            molecule_b: self.molecule_a.clone(),
            kernel: self.kernel,
            xi: self.xi,
            origin: self.origin,
        }
    }

    /// Rigid motion `r -> rot · r + shift` of the whole scene, origin included.
    pub fn transformed(&self, rot: &nalgebra::Matrix3<f64>, shift: &Vec3) -> Result<Self> {
        Ok(Self {
            molecule_a: self.molecule_a.transformed(rot, shift)?,
            molecule_b: self.molecule_b.transformed(rot, shift)?,
            kernel: self.kernel,
            xi: self.xi,
            origin: Some(rot * self.resolved_origin() + shift),
        })
    }

    /// Molecule B rigidly translated by `shift` (origin re-resolved).
    pub fn with_b_translated(&self, shift: &Vec3) -> Result<Self> {
        Ok(Self {
            molecule_b: self.molecule_b.transformed(&nalgebra::Matrix3::identity(), shift)?,
            origin: None,
            ..self.clone()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InteractionConfig {
    /// Truncation of the two-particle kernel table.
    pub n_pair: usize,
    /// Radial scale of the kernel table; `None` means `ξ + 1`.
    pub beta: Option<f64>,
    pub integrals: IntegralConfig,
    /// Used by the Monte Carlo fallback for anisotropic kernels.
    pub oracle: OracleConfig,
}

impl Default for InteractionConfig {
    fn default() -> Self {
        Self { n_pair: 24, beta: None, integrals: IntegralConfig::default(), oracle: OracleConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermReport {
    pub value: f64,
    pub method: String,
    pub error_estimate: f64,
    /// Partial values for increasing truncation, when the term is a series.
    pub convergence: Option<Vec<f64>>,
    pub warnings: Vec<String>,
}

impl TermReport {
    fn exact(value: f64) -> Self {
        Self { value, method: "closed_form".into(), error_estimate: 0.0, convergence: None, warnings: vec![] }
    }

    fn from_contraction(c: Contraction) -> Self {
        Self { value: c.value, method: "integral_engine".into(), error_estimate: c.error_estimate, convergence: None, warnings: c.warnings }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub u4: f64,
    pub total: f64,
    pub origin: Vec3,
    pub terms: [TermReport; 4],
}

impl EnergyBreakdown {
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, t) in ["u1", "u2", "u3", "u4"].iter().zip(&self.terms) {
            out.extend(t.warnings.iter().map(|w| format!("{name}: {w}")));
        }
        out
    }
}

/// `U1 = Σ_b Σ_b' Z_b Z_b' h(R_b' - R_b)`.
pub fn u1_nuclear(scene: &Scene) -> Result<f64> {
    let q = &scene.kernel;
    let mut total = 0.0;
    for na in &scene.molecule_a.nuclei {
        for nb in &scene.molecule_b.nuclei {
            let d = nb.position - na.position;
            if d.norm() <= 1e-12 && q.mu_star < 1.0 {
                return Err(Error::Singular { what: format!("kernel (mu* = {}) between coincident nuclei", q.mu_star) });
            }
            total += na.charge * nb.charge * kernel_value(q, scene.xi, &d);
        }
    }
    Ok(total)
}

/// `U2 = -2 Σ_b' Σ_i Z_b' f_i h_i^A(R_b')` and the mirror term `U3` for the
/// electrons of B in the field of the nuclei of A.
pub fn u2_u3_electron_nuclear(scene: &Scene, engine: &IntegralEngine) -> Result<(Contraction, Contraction)> {
    let (q, xi) = (&scene.kernel, scene.xi);
    let sign = if q.nu % 2 == 0 { 1.0 } else { -1.0 };
    let side = |electrons: &Molecule, nuclei: &Molecule, flip: f64| -> Result<Contraction> {
        let mut out = Contraction::default();
        if electrons.orbitals.is_empty() {
            return Ok(out);
        }
        for n in &nuclei.nuclei {
            let el = electronic_potential(electrons, q, xi, &n.position, engine)?;
            out.merge(-n.charge * flip, &el);
        }
        Ok(out)
    };
    let (u2, u3) = rayon::join(|| side(&scene.molecule_a, &scene.molecule_b, 1.0), || side(&scene.molecule_b, &scene.molecule_a, sign));
    Ok((u2?, u3?))
}

/// Projections of the electron density of `mol` onto the kernel-table
/// functions about the table origin.
pub fn density_projection(mol: &Molecule, table: &KernelTable) -> Result<Vec<f64>> {
    let rho = mol.electron_density()?;
    let mut centers = rho.centers();
    centers.push(table.origin);
    let (n_r, n_t) = (72 + 2 * table.n_pair, 16 + table.n_pair);
    let grid = Grid3d::with_orders(&centers, 1.0 / rho.max_zeta(), n_r, n_t, 3);
    Ok(table.project(&grid, |x| rho.value(x)))
}

/// `U4 = 4 Σ_i Σ_i' f_i f_i' ∬ |u_i(r)|^2 |u_i'(r')|^2 h(r' - r)`, through the
/// factorized kernel table for isotropic kernels and 6D Monte Carlo
/// otherwise.
pub fn u4_electron_electron(scene: &Scene, cfg: &InteractionConfig) -> Result<TermReport> {
    let (a, b) = (&scene.molecule_a, &scene.molecule_b);
    if a.orbitals.is_empty() || b.orbitals.is_empty() {
        return Ok(TermReport::exact(0.0));
    }
    if scene.kernel.nu != 0 {
        let integrand = TwoElectronIntegrand { rho1: a.electron_density()?, rho2: b.electron_density()?, kernel: scene.kernel, xi: scene.xi };
        let r = integrate_6d_mc(&integrand, &cfg.oracle)?;
        let mut warnings = vec!["anisotropic kernel: electron-electron term estimated by 6D Monte Carlo".to_string()];
        warnings.extend(r.warning);
        return Ok(TermReport { value: r.value, method: "monte_carlo".into(), error_estimate: r.error_estimate, convergence: None, warnings });
    }
    let beta = cfg.beta.unwrap_or(scene.xi + 1.0);
    let table = expand_kernel_two_particle(&scene.kernel, scene.xi, &scene.resolved_origin(), beta, cfg.n_pair)?;
    let (ia, ib) = rayon::join(|| density_projection(a, &table), || density_projection(b, &table));
    let (ia, ib) = (ia?, ib?);
    let history: Vec<f64> = (1..=cfg.n_pair).map(|n| table.contract(&ia, &ib, n)).collect();
    let value = *history.last().unwrap_or(&0.0);
    let change = if history.len() >= 2 { (value - history[history.len() - 2]).abs() } else { 0.0 };
    let mut warnings = Vec::new();
    if change > cfg.integrals.tol * value.abs().max(f64::MIN_POSITIVE) {
        warnings.push(format!(
            "kernel table series not converged at N_pair = {}: last change {change:.3e} (relative tolerance {:.1e})",
            cfg.n_pair, cfg.integrals.tol
        ));
    }
    Ok(TermReport { value, method: "series_N".into(), error_estimate: change, convergence: Some(history), warnings })
}

pub fn interaction_energy(scene: &Scene, cfg: &InteractionConfig) -> Result<EnergyBreakdown> {
    let engine = IntegralEngine::new(cfg.integrals);
    let u1 = u1_nuclear(scene)?;
    let (en, u4) = rayon::join(|| u2_u3_electron_nuclear(scene, &engine), || u4_electron_electron(scene, cfg));
    let (u2, u3) = en?;
    let u4 = u4?;
    let terms = [TermReport::exact(u1), TermReport::from_contraction(u2), TermReport::from_contraction(u3), u4];
    let (u1, u2, u3, u4) = (terms[0].value, terms[1].value, terms[2].value, terms[3].value);
    Ok(EnergyBreakdown { u1, u2, u3, u4, total: u1 + u2 + u3 + u4, origin: scene.resolved_origin(), terms })
}
